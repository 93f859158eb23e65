#include "taxsim/probmodel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "taxsim/error.hpp"
#include "text_util.hpp"

namespace taxsim {

LemmaMap load_lemma_map(std::istream& in) {
  LemmaMap lemmas;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected surface<TAB>lemma");
    lemmas.insert_or_assign(std::string(fields[0]), std::string(fields[1]));
  }
  return lemmas;
}

LemmaMap load_lemma_map_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return load_lemma_map(in);
}

namespace {

std::string_view lemmatize(std::string_view word, const LemmaMap* lemmas) {
  if (lemmas) {
    auto it = lemmas->find(word);
    if (it != lemmas->end()) return it->second;
  }
  return word;
}

}  // namespace

bool FrequencyTable::add(std::string_view word, double weight) {
  const auto senses = taxonomy_->sense_indices(word);
  if (senses.empty()) {
    skipped_ += weight;
    return false;
  }
  scratch_.clear();
  for (auto s : senses)
    for (const auto& a : taxonomy_->ancestors(s)) scratch_.push_back(a.node);
  std::sort(scratch_.begin(), scratch_.end());
  scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
  for (auto c : scratch_) freq_[c] += weight;
  total_ += weight;
  return true;
}

FrequencyTable& FrequencyTable::operator+=(const FrequencyTable& other) {
  if (other.taxonomy_ != taxonomy_)
    throw Error(ErrorKind::Domain, "cannot merge frequency tables over different taxonomies");
  for (std::size_t c = 0; c < freq_.size(); ++c) freq_[c] += other.freq_[c];
  total_ += other.total_;
  skipped_ += other.skipped_;
  return *this;
}

FrequencyTable count_corpus(const Taxonomy& taxonomy, std::istream& text, const LemmaMap* lemmas) {
  FrequencyTable table(taxonomy);
  std::string token;
  while (text >> token) table.add(lemmatize(token, lemmas));
  return table;
}

FrequencyTable count_corpus(const Taxonomy& taxonomy, std::span<const std::string> tokens,
                            const LemmaMap* lemmas) {
  FrequencyTable table(taxonomy);
  for (const auto& token : tokens) table.add(lemmatize(token, lemmas));
  return table;
}

FrequencyTable count_word_counts(const Taxonomy& taxonomy, std::istream& counts,
                                 const LemmaMap* lemmas) {
  FrequencyTable table(taxonomy);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(counts, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split(line, '\t');
    const auto count = fields.size() == 2 ? detail::parse_double(fields[1]) : std::nullopt;
    if (!count || *count < 0 || fields[0].empty())
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected word<TAB>count");
    table.add(lemmatize(fields[0], lemmas), *count);
  }
  return table;
}

ProbabilityModel::ProbabilityModel(const Taxonomy& taxonomy, std::vector<double> p,
                                   std::vector<double> ic, double log_base)
    : taxonomy_(&taxonomy), p_(std::move(p)), ic_(std::move(ic)), log_base_(log_base) {
  if (!(log_base > 0.0) || log_base == 1.0)
    throw Error(ErrorKind::Domain, "log base must be positive and not 1");
  if (p_.size() != taxonomy.size() || ic_.size() != taxonomy.size())
    throw Error(ErrorKind::Domain, "probability vector does not match taxonomy size");
}

ProbabilityModel ProbabilityModel::rebased(double log_base) const {
  const double scale = std::log(log_base_) / std::log(log_base);
  std::vector<double> ic(ic_);
  for (auto& v : ic) v *= scale;
  return ProbabilityModel(*taxonomy_, p_, std::move(ic), log_base);
}

namespace {

double information_content(double p, double log_base) {
  if (p <= 0.0) return ProbabilityModel::kInfiniteIc;
  if (p >= 1.0) return 0.0;
  return -std::log(p) / std::log(log_base);
}

}  // namespace

ProbabilityModel to_probability(const FrequencyTable& table, double log_base) {
  if (!(table.total() > 0.0))
    throw Error(ErrorKind::Degenerate, "no in-taxonomy tokens were counted");
  const auto& t = table.taxonomy();
  std::vector<double> p(t.size());
  std::vector<double> ic(t.size());
  for (ConceptIndex c = 0; c < t.size(); ++c) {
    p[c] = table.freq(c) / table.total();
    ic[c] = information_content(p[c], log_base);
  }
  return ProbabilityModel(t, std::move(p), std::move(ic), log_base);
}

ProbabilityModel load_probabilities(const Taxonomy& taxonomy, std::istream& in, double log_base) {
  std::vector<std::optional<double>> p(taxonomy.size());
  std::vector<std::optional<double>> ic(taxonomy.size());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 2)
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected concept<TAB>value");
    const auto c = taxonomy.find(fields[0]);
    if (!c)
      throw Error(ErrorKind::Load,
                  detail::at_line(line_no) + "unknown concept '" + std::string(fields[0]) + "'");

    std::string_view value = fields[1];
    bool is_ic = false;
    if (value.starts_with("ic=") || value.starts_with("ic:")) {
      is_ic = true;
      value.remove_prefix(3);
    } else if (value.starts_with("p=") || value.starts_with("p:")) {
      value.remove_prefix(2);
    }
    const auto v = detail::parse_double(value);
    const bool in_range = v && (is_ic ? *v >= 0.0 : (*v >= 0.0 && *v <= 1.0));
    if (!in_range)
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "bad value '" + std::string(fields[1]) + "'");
    if (p[*c])
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "concept listed twice");
    if (is_ic) {
      ic[*c] = *v;
      p[*c] = std::isinf(*v) ? 0.0 : std::pow(log_base, -*v);
    } else {
      p[*c] = *v;
      ic[*c] = information_content(*v, log_base);
    }
  }

  std::vector<double> probs(taxonomy.size());
  std::vector<double> ics(taxonomy.size());
  for (ConceptIndex c = 0; c < taxonomy.size(); ++c) {
    const double fill = (c == taxonomy.virtual_root()) ? 1.0 : 0.0;
    probs[c] = p[c].value_or(fill);
    ics[c] = ic[c] ? *ic[c] : information_content(probs[c], log_base);
  }

  for (ConceptIndex c = 0; c < taxonomy.size(); ++c) {
    for (auto parent : taxonomy.parents(c)) {
      const bool ok = ic[c] && ic[parent] ? ics[c] >= ics[parent]
                                          : probs[c] <= probs[parent] * (1.0 + 1e-12);
      if (!ok) {
        std::ostringstream msg;
        msg << "probability not monotone on edge " << taxonomy.id(c) << " -> " << taxonomy.id(parent)
            << " (" << probs[c] << " > " << probs[parent] << ")";
        throw Error(ErrorKind::Load, msg.str());
      }
    }
  }
  return ProbabilityModel(taxonomy, std::move(probs), std::move(ics), log_base);
}

ProbabilityModel load_probabilities_file(const Taxonomy& taxonomy,
                                         const std::filesystem::path& path, double log_base) {
  auto in = detail::open_input(path);
  return load_probabilities(taxonomy, in, log_base);
}

void write_probabilities(const ProbabilityModel& model, std::ostream& out) {
  const auto& t = model.taxonomy();
  const auto old_precision = out.precision(17);
  for (ConceptIndex c = 0; c < t.size(); ++c) {
    if (std::isinf(model.ic(c)))
      out << t.id(c) << "\tp=0\n";
    else
      out << t.id(c) << "\tic=" << model.ic(c) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace taxsim
