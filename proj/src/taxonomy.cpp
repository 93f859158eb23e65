#include "taxsim/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "taxsim/error.hpp"
#include "text_util.hpp"

namespace taxsim {

std::ostream& operator<<(std::ostream& os, const ConceptId& id) {
  return os << id.str();
}

namespace {

Error load_error(const ConceptRecord& rec, const std::string& what) {
  if (rec.line > 0) return Error(ErrorKind::Load, detail::at_line(rec.line) + what);
  return Error(ErrorKind::Load, what);
}

void check_id(const ConceptRecord& rec, std::string_view id) {
  if (id.empty()) throw load_error(rec, "empty concept id");
  if (id.find_first_of("\t,\n") != std::string_view::npos)
    throw load_error(rec, "concept id '" + std::string(id) + "' contains a tab, comma or newline");
}

}  // namespace

Taxonomy Taxonomy::from_records(std::vector<ConceptRecord> records,
                                const LoadOptions& options) {
  if (options.virtual_root) {
    std::vector<std::string> top_parent{std::string(kVirtualRootId)};
    for (auto& rec : records)
      if (rec.parents.empty()) rec.parents = top_parent;
    records.push_back(ConceptRecord{std::string(kVirtualRootId), {}, {}, 0});
  }

  for (const auto& rec : records) {
    check_id(rec, rec.id);
    for (const auto& p : rec.parents) check_id(rec, p);
  }

  std::sort(records.begin(), records.end(),
            [](const ConceptRecord& a, const ConceptRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].id == records[i - 1].id) {
      const auto& later = records[i].line >= records[i - 1].line ? records[i] : records[i - 1];
      throw load_error(later, "duplicate concept id '" + records[i].id + "'");
    }
  }

  Taxonomy t;
  const std::size_t n = records.size();
  if (n > std::numeric_limits<ConceptIndex>::max())
    throw Error(ErrorKind::Load, "taxonomy too large");
  t.ids_.reserve(n);
  for (const auto& rec : records) t.ids_.emplace_back(rec.id);

  t.parents_.resize(n);
  t.children_.resize(n);
  t.words_.resize(n);
  for (ConceptIndex c = 0; c < n; ++c) {
    const auto& rec = records[c];
    for (const auto& p : rec.parents) {
      const auto pi = t.find(p);
      if (!pi) throw load_error(rec, "concept '" + rec.id + "' has unknown parent '" + p + "'");
      if (*pi == c) throw load_error(rec, "cycle detected: " + rec.id + " -> " + rec.id);
      t.parents_[c].push_back(*pi);
    }
    std::sort(t.parents_[c].begin(), t.parents_[c].end());
    t.parents_[c].erase(std::unique(t.parents_[c].begin(), t.parents_[c].end()),
                        t.parents_[c].end());
    for (auto p : t.parents_[c]) t.children_[p].push_back(c);

    std::set<std::string> words(rec.words.begin(), rec.words.end());
    t.words_[c].assign(words.begin(), words.end());
    for (const auto& w : t.words_[c]) t.sense_index_[w].push_back(c);
  }

  // Kahn's algorithm from the roots downward.
  std::vector<std::size_t> pending(n);
  std::deque<ConceptIndex> ready;
  for (ConceptIndex c = 0; c < n; ++c) {
    pending[c] = t.parents_[c].size();
    if (pending[c] == 0) {
      ready.push_back(c);
      t.roots_.push_back(c);
    }
  }
  while (!ready.empty()) {
    const auto c = ready.front();
    ready.pop_front();
    t.topo_.push_back(c);
    for (auto child : t.children_[c])
      if (--pending[child] == 0) ready.push_back(child);
  }
  if (t.topo_.size() != n) {
    // Every unprocessed concept still has an unprocessed parent, so walking
    // upward through them must revisit a concept.
    ConceptIndex c = 0;
    while (pending[c] == 0) ++c;
    std::vector<bool> seen(n, false);
    while (true) {
      seen[c] = true;
      const auto next = *std::find_if(t.parents_[c].begin(), t.parents_[c].end(),
                                      [&](ConceptIndex p) { return pending[p] > 0; });
      if (seen[next])
        throw load_error(records[c], "cycle detected: " + records[c].id + " -> " + records[next].id);
      c = next;
    }
  }

  if (options.virtual_root) t.virtual_root_ = t.find(kVirtualRootId);
  if (options.fallback_concept) {
    t.fallback_ = t.find(*options.fallback_concept);
    if (!t.fallback_)
      throw Error(ErrorKind::Load, "fallback concept '" + *options.fallback_concept + "' not in taxonomy");
  }

  constexpr unsigned kUnset = std::numeric_limits<unsigned>::max();
  t.ancestors_.resize(n);
  t.depth_.assign(n, 0);
  std::vector<unsigned> dist(n, kUnset);
  std::vector<ConceptIndex> touched;
  for (auto c : t.topo_) {
    touched.assign(1, c);
    dist[c] = 0;
    unsigned depth = t.parents_[c].empty() ? 0 : kUnset;
    for (auto p : t.parents_[c]) {
      depth = std::min(depth, t.depth_[p] + 1);
      for (const auto& a : t.ancestors_[p]) {
        if (dist[a.node] == kUnset) touched.push_back(a.node);
        dist[a.node] = std::min(dist[a.node], a.distance + 1);
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& out = t.ancestors_[c];
    out.reserve(touched.size());
    for (auto a : touched) {
      out.push_back({a, dist[a]});
      dist[a] = kUnset;
    }
    t.depth_[c] = depth;
    t.max_depth_ = std::max(t.max_depth_, depth);
  }
  return t;
}

std::optional<ConceptIndex> Taxonomy::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                             [](const ConceptId& a, std::string_view b) { return a.str() < b; });
  if (it == ids_.end() || it->str() != id) return std::nullopt;
  return static_cast<ConceptIndex>(it - ids_.begin());
}

ConceptIndex Taxonomy::index_of(std::string_view id) const {
  if (auto c = find(id)) return *c;
  throw Error(ErrorKind::Vocabulary, "unknown concept '" + std::string(id) + "'");
}

std::span<const ConceptIndex> Taxonomy::sense_index(std::string_view word) const {
  auto it = sense_index_.find(word);
  if (it == sense_index_.end()) return {};
  return it->second;
}

std::vector<ConceptIndex> Taxonomy::sense_indices(std::string_view word) const {
  auto direct = sense_index(word);
  if (direct.empty() && fallback_) return {*fallback_};
  return {direct.begin(), direct.end()};
}

std::vector<std::string> Taxonomy::vocabulary() const {
  std::vector<std::string> out;
  out.reserve(sense_index_.size());
  for (const auto& [word, senses] : sense_index_) out.push_back(word);
  return out;
}

bool Taxonomy::subsumes(ConceptIndex ancestor, ConceptIndex c) const {
  const auto& list = ancestors_[c];
  auto it = std::lower_bound(list.begin(), list.end(), ancestor,
                             [](const Ancestor& a, ConceptIndex b) { return a.node < b; });
  return it != list.end() && it->node == ancestor;
}

namespace {

// Calls f(concept, d1, d2) for every concept in both sorted ancestor lists.
template <typename F>
void for_each_common(std::span<const Ancestor> a, std::span<const Ancestor> b, F&& f) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->node < j->node) {
      ++i;
    } else if (j->node < i->node) {
      ++j;
    } else {
      f(i->node, i->distance, j->distance);
      ++i;
      ++j;
    }
  }
}

}  // namespace

std::vector<ConceptIndex> Taxonomy::common_ancestors(ConceptIndex c1, ConceptIndex c2) const {
  std::vector<ConceptIndex> out;
  for_each_common(ancestors_[c1], ancestors_[c2],
                  [&](ConceptIndex c, unsigned, unsigned) { out.push_back(c); });
  return out;
}

std::optional<unsigned> Taxonomy::path_length(ConceptIndex c1, ConceptIndex c2) const {
  std::optional<unsigned> best;
  for_each_common(ancestors_[c1], ancestors_[c2], [&](ConceptIndex, unsigned d1, unsigned d2) {
    if (!best || d1 + d2 < *best) best = d1 + d2;
  });
  return best;
}

std::vector<ConceptId> Taxonomy::to_ids(std::span<const ConceptIndex> concepts) const {
  std::vector<ConceptId> out;
  out.reserve(concepts.size());
  for (auto c : concepts) out.push_back(ids_[c]);
  return out;
}

std::vector<ConceptId> Taxonomy::senses(std::string_view word) const {
  return to_ids(sense_indices(word));
}

std::vector<ConceptId> Taxonomy::subsumers(std::string_view cid) const {
  std::vector<ConceptId> out;
  for (const auto& a : ancestors_[index_of(cid)]) out.push_back(ids_[a.node]);
  return out;
}

std::vector<ConceptId> Taxonomy::common_subsumers(std::string_view c1, std::string_view c2) const {
  return to_ids(common_ancestors(index_of(c1), index_of(c2)));
}

std::optional<unsigned> Taxonomy::shortest_path_edges(std::string_view c1,
                                                      std::string_view c2) const {
  return path_length(index_of(c1), index_of(c2));
}

unsigned Taxonomy::depth_edges(std::string_view cid) const {
  return depth_[index_of(cid)];
}

std::vector<ConceptRecord> parse_taxonomy(std::istream& in) {
  std::vector<ConceptRecord> records;
  std::string line;
  std::size_t line_no = 0;
  auto parse_list = [&](std::string_view field, std::vector<std::string>& out) {
    if (field.empty()) return;
    for (auto item : detail::split(field, ',')) {
      if (item.empty())
        throw Error(ErrorKind::Load, detail::at_line(line_no) + "empty list item");
      out.emplace_back(item);
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() > 3)
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected at most 3 tab-separated fields");
    if (fields[0].empty())
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "empty concept id");
    ConceptRecord rec;
    rec.id = std::string(fields[0]);
    rec.line = line_no;
    if (fields.size() > 1) parse_list(fields[1], rec.parents);
    if (fields.size() > 2) parse_list(fields[2], rec.words);
    records.push_back(std::move(rec));
  }
  return records;
}

Taxonomy load_taxonomy(std::istream& in, const LoadOptions& options) {
  return Taxonomy::from_records(parse_taxonomy(in), options);
}

Taxonomy load_taxonomy_file(const std::filesystem::path& path, const LoadOptions& options) {
  auto in = detail::open_input(path);
  return load_taxonomy(in, options);
}

}  // namespace taxsim
