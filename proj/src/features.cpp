#include "ucflm/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ucflm/error.hpp"
#include "ucflm/rng.hpp"
#include "ucflm/text_io.hpp"

namespace ucflm {

double cosine_similarity(const TopicDistribution& a,
                         const TopicDistribution& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.probs.size(); ++i) {
    dot += a.probs[i] * b.probs[i];
    na += a.probs[i] * a.probs[i];
    nb += b.probs[i] * b.probs[i];
  }
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double symmetric_kl(const TopicDistribution& a, const TopicDistribution& b) {
  // Inferred distributions are strictly positive; clamp anyway so
  // handcrafted vectors with zeros stay finite.
  constexpr double kFloor = 1e-12;
  double kl_ab = 0.0, kl_ba = 0.0;
  for (size_t i = 0; i < a.probs.size(); ++i) {
    const double p = std::max(a.probs[i], kFloor);
    const double q = std::max(b.probs[i], kFloor);
    kl_ab += p * std::log(p / q);
    kl_ba += q * std::log(q / p);
  }
  return 0.5 * (kl_ab + kl_ba);
}

double similarity_score(const TopicDistribution& a, const TopicDistribution& b,
                        Similarity metric) {
  return metric == Similarity::kCosine ? cosine_similarity(a, b)
                                       : -symmetric_kl(a, b);
}

UserFeature user_dependent_feature(const LdaModel& model,
                                   const std::vector<Sentence>& personal,
                                   int iterations, uint64_t seed) {
  UserFeature uf;
  uf.provenance = Provenance::kUserDependent;
  uf.scope = SearchScope::kNone;
  size_t tokens = 0;
  for (const auto& s : personal) tokens += s.size();
  if (personal.empty() || tokens == 0) {
    uf.f = uniform_distribution(model.topics);
    uf.degraded = true;
    return uf;
  }
  uf.f = infer_topics_multi(model, personal, iterations, seed);
  return uf;
}

namespace {

uint64_t entry_seed(uint64_t seed, const std::string& user_id, int ordinal) {
  return mix_seed(mix_seed(seed, fnv1a(user_id)),
                  static_cast<uint64_t>(ordinal));
}

SentenceIndex build_index_impl(const LdaModel& model,
                               const std::vector<IndexedUser>& corpora,
                               int iterations, uint64_t seed, bool parallel) {
  SentenceIndex index;
  for (const auto& user : corpora) {
    if (!user.sentences) continue;
    for (size_t i = 0; i < user.sentences->size(); ++i) {
      IndexEntry e;
      e.key.user_id = user.user_id;
      e.key.ordinal = static_cast<int>(i);
      index.entries.push_back(std::move(e));
    }
  }
  std::sort(index.entries.begin(), index.entries.end(),
            [](const IndexEntry& a, const IndexEntry& b) { return a.key < b.key; });

  // sentence lookup by user for the sorted entry order
  std::map<std::string, const std::vector<Sentence>*> by_user;
  for (const auto& user : corpora) by_user[user.user_id] = user.sentences;

  const int64_t n = static_cast<int64_t>(index.entries.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int64_t i = 0; i < n; ++i) {
      IndexEntry& e = index.entries[i];
      const auto& sents = *by_user.at(e.key.user_id);
      e.dist = infer_topics(model, sents[e.key.ordinal], iterations,
                            entry_seed(seed, e.key.user_id, e.key.ordinal));
    }
  } else {
    for (int64_t i = 0; i < n; ++i) {
      IndexEntry& e = index.entries[i];
      const auto& sents = *by_user.at(e.key.user_id);
      e.dist = infer_topics(model, sents[e.key.ordinal], iterations,
                            entry_seed(seed, e.key.user_id, e.key.ordinal));
    }
  }
  return index;
}

struct Candidate {
  double score;
  int64_t idx;
};

bool better(const Candidate& a, const Candidate& b,
            const std::vector<IndexEntry>& entries) {
  if (a.score != b.score) return a.score > b.score;
  return entries[a.idx].key < entries[b.idx].key;
}

}  // namespace

SentenceIndex build_index(const LdaModel& model,
                          const std::vector<IndexedUser>& corpora,
                          int iterations, uint64_t seed) {
  return build_index_impl(model, corpora, iterations, seed, true);
}

SentenceIndex build_index_serial(const LdaModel& model,
                                 const std::vector<IndexedUser>& corpora,
                                 int iterations, uint64_t seed) {
  return build_index_impl(model, corpora, iterations, seed, false);
}

std::vector<const IndexEntry*> nearest_sentences(
    const TopicDistribution& query, const SentenceIndex& index, int n,
    Similarity metric, const std::optional<SentenceKey>& exclude) {
  if (n < 1) throw DataError("nearest_sentences: N must be >= 1");
  if (index.empty()) throw DataError("nearest_sentences: empty index");

  const int64_t total = static_cast<int64_t>(index.entries.size());
  std::vector<double> scores(total);
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < total; ++i) {
    scores[i] = similarity_score(query, index.entries[i].dist, metric);
  }

  std::vector<Candidate> cands;
  cands.reserve(total);
  for (int64_t i = 0; i < total; ++i) {
    if (exclude && index.entries[i].key == *exclude) continue;
    cands.push_back({scores[i], i});
  }
  if (cands.empty()) throw DataError("nearest_sentences: empty index");

  const size_t keep = std::min<size_t>(static_cast<size_t>(n), cands.size());
  auto cmp = [&](const Candidate& a, const Candidate& b) {
    return better(a, b, index.entries);
  };
  std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(), cmp);
  cands.resize(keep);

  std::vector<const IndexEntry*> out;
  out.reserve(keep);
  for (const auto& c : cands) out.push_back(&index.entries[c.idx]);
  return out;
}

std::vector<const IndexEntry*> nearest_sentences_serial(
    const TopicDistribution& query, const SentenceIndex& index, int n,
    Similarity metric, const std::optional<SentenceKey>& exclude) {
  if (n < 1) throw DataError("nearest_sentences: N must be >= 1");
  if (index.empty()) throw DataError("nearest_sentences: empty index");

  std::vector<Candidate> cands;
  cands.reserve(index.entries.size());
  for (int64_t i = 0; i < static_cast<int64_t>(index.entries.size()); ++i) {
    if (exclude && index.entries[i].key == *exclude) continue;
    cands.push_back({similarity_score(query, index.entries[i].dist, metric), i});
  }
  if (cands.empty()) throw DataError("nearest_sentences: empty index");
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    return better(a, b, index.entries);
  });
  if (cands.size() > static_cast<size_t>(n)) cands.resize(n);

  std::vector<const IndexEntry*> out;
  out.reserve(cands.size());
  for (const auto& c : cands) out.push_back(&index.entries[c.idx]);
  return out;
}

UserFeature sentence_dependent_feature_for_query(
    const TopicDistribution& query, const SentenceIndex& index, int n,
    bool average_with_query, Similarity metric,
    const std::optional<SentenceKey>& exclude, SearchScope scope) {
  UserFeature uf;
  uf.provenance = average_with_query ? Provenance::kSentenceDependentAveraged
                                     : Provenance::kSentenceDependent;
  uf.scope = scope;

  const int k = query.size();
  bool empty_scope = index.empty();
  if (!empty_scope && exclude && index.size() == 1 &&
      index.entries[0].key == *exclude) {
    empty_scope = true;
  }
  if (empty_scope) {
    uf.f = uniform_distribution(k);
    uf.degraded = true;
    if (average_with_query) {
      for (int i = 0; i < k; ++i) {
        uf.f.probs[i] = 0.5 * (uf.f.probs[i] + query.probs[i]);
      }
    }
    return uf;
  }

  const auto nearest = nearest_sentences(query, index, n, metric, exclude);
  uf.f.probs.assign(k, 0.0);
  for (const IndexEntry* e : nearest) {
    for (int i = 0; i < k; ++i) uf.f.probs[i] += e->dist.probs[i];
  }
  const double inv = 1.0 / static_cast<double>(nearest.size());
  for (int i = 0; i < k; ++i) uf.f.probs[i] *= inv;

  if (average_with_query) {
    for (int i = 0; i < k; ++i) {
      uf.f.probs[i] = 0.5 * (uf.f.probs[i] + query.probs[i]);
    }
  }
  return uf;
}

UserFeature sentence_dependent_feature(
    const LdaModel& model, const Sentence& sentence, const SentenceIndex& index,
    int n, bool average_with_query, int iterations, uint64_t seed,
    Similarity metric, const std::optional<SentenceKey>& exclude,
    SearchScope scope) {
  const TopicDistribution query = infer_topics(model, sentence, iterations, seed);
  return sentence_dependent_feature_for_query(query, index, n,
                                              average_with_query, metric,
                                              exclude, scope);
}

void SentenceIndex::save(const std::string& path) const {
  std::ofstream out = open_output(path);
  for (const auto& e : entries) {
    out << e.key.user_id << '\t' << e.key.ordinal << '\t';
    for (int i = 0; i < e.dist.size(); ++i) {
      if (i) out << ' ';
      out << fmt_double(e.dist.probs[i]);
    }
    out << '\n';
  }
}

SentenceIndex SentenceIndex::load(const std::string& path, int topics) {
  FeatureFile ff = load_features(path);
  SentenceIndex index;
  for (auto& [key, dist] : ff.sentence_rows) {
    if (topics > 0 && dist.size() != topics) {
      throw DataError("index file " + path + ": feature dimension mismatch");
    }
    index.entries.push_back({key, std::move(dist)});
  }
  std::sort(index.entries.begin(), index.entries.end(),
            [](const IndexEntry& a, const IndexEntry& b) { return a.key < b.key; });
  return index;
}

void save_features(
    const std::string& path,
    const std::vector<std::pair<SentenceKey, TopicDistribution>>& rows,
    const std::vector<std::pair<std::string, TopicDistribution>>& user_rows) {
  std::ofstream out = open_output(path);
  for (const auto& [user, dist] : user_rows) {
    out << user << "\t*\t";
    for (int i = 0; i < dist.size(); ++i) {
      if (i) out << ' ';
      out << fmt_double(dist.probs[i]);
    }
    out << '\n';
  }
  for (const auto& [key, dist] : rows) {
    out << key.user_id << '\t' << key.ordinal << '\t';
    for (int i = 0; i < dist.size(); ++i) {
      if (i) out << ' ';
      out << fmt_double(dist.probs[i]);
    }
    out << '\n';
  }
}

FeatureFile load_features(const std::string& path) {
  std::ifstream in = open_input(path);
  FeatureFile ff;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_char(line, '\t');
    if (fields.size() != 3) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected user<TAB>ordinal<TAB>values");
    }
    TopicDistribution dist;
    for (const auto& tok : split_ws(fields[2])) {
      dist.probs.push_back(std::stod(tok));
    }
    if (dist.probs.empty()) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": empty feature vector");
    }
    if (fields[1] == "*") {
      ff.user_rows.emplace_back(fields[0], std::move(dist));
    } else {
      SentenceKey key{fields[0], std::stoi(fields[1])};
      ff.sentence_rows.emplace_back(std::move(key), std::move(dist));
    }
  }
  return ff;
}

}  // namespace ucflm
