#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "taxsim/error.hpp"
#include "taxsim/probmodel.hpp"
#include "taxsim/taxonomy.hpp"

namespace testing_support {

inline std::string data_path(const std::string& name) {
  return std::string(TAXSIM_DATA_DIR) + "/" + name;
}

inline taxsim::Taxonomy tax_from(const std::string& text, const taxsim::LoadOptions& opts = {}) {
  std::istringstream in(text);
  return taxsim::load_taxonomy(in, opts);
}

inline taxsim::ProbabilityModel probs_from(const taxsim::Taxonomy& t, const std::string& text,
                                           double base = 2.0) {
  std::istringstream in(text);
  return taxsim::load_probabilities(t, in, base);
}

inline std::vector<std::string> ids(const std::vector<taxsim::ConceptId>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(c.str());
  return out;
}

inline std::vector<std::string> ids(const taxsim::Taxonomy& t,
                                    const std::vector<taxsim::ConceptIndex>& v) {
  std::vector<std::string> out;
  for (auto c : v) out.push_back(t.id(c).str());
  return out;
}

// Runs f and returns the kind of taxsim::Error it threw; fails otherwise.
template <typename F>
std::optional<taxsim::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const taxsim::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

template <typename F>
std::string error_text(F&& f) {
  try {
    f();
  } catch (const taxsim::Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace testing_support
