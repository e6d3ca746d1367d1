#ifndef UCFLM_FEATURES_HPP
#define UCFLM_FEATURES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucflm/lda.hpp"

namespace ucflm {

enum class Provenance { kUserDependent, kSentenceDependent, kSentenceDependentAveraged };
enum class SearchScope { kPersonal, kPersonalPlusFriends, kNone };
enum class Similarity { kCosine, kSymmetricKl };

/// The user characteristic feature fed to the network: a topic
/// distribution plus bookkeeping about how it was produced.
struct UserFeature {
  TopicDistribution f;
  Provenance provenance = Provenance::kUserDependent;
  SearchScope scope = SearchScope::kNone;
  bool degraded = false;  // fell back to uniform (cold-start user)
};

/// Key of an indexed sentence: owner and position in the owner's corpus.
struct SentenceKey {
  std::string user_id;
  int ordinal = 0;

  bool operator==(const SentenceKey& o) const {
    return ordinal == o.ordinal && user_id == o.user_id;
  }
  bool operator<(const SentenceKey& o) const {
    if (user_id != o.user_id) return user_id < o.user_id;
    return ordinal < o.ordinal;
  }
};

struct IndexEntry {
  SentenceKey key;
  TopicDistribution dist;
};

/// Precomputed topic distribution per indexed sentence. Immutable after
/// build; all searches are read-only.
struct SentenceIndex {
  std::vector<IndexEntry> entries;

  bool empty() const { return entries.empty(); }
  size_t size() const { return entries.size(); }

  void save(const std::string& path) const;
  static SentenceIndex load(const std::string& path, int topics);
};

/// Sentences of one user, already encoded, for indexing.
struct IndexedUser {
  std::string user_id;
  const std::vector<Sentence>* sentences = nullptr;
};

double cosine_similarity(const TopicDistribution& a, const TopicDistribution& b);
double symmetric_kl(const TopicDistribution& a, const TopicDistribution& b);

/// Higher is more similar for either metric.
double similarity_score(const TopicDistribution& a, const TopicDistribution& b,
                        Similarity metric);

/// Whole personal corpus as one document. Empty corpus degrades to the
/// uniform feature with the degraded flag set.
UserFeature user_dependent_feature(const LdaModel& model,
                                   const std::vector<Sentence>& personal,
                                   int iterations, uint64_t seed);

/// Topic distribution for every sentence of every listed user. Entry seeds
/// mix the caller seed with the owner id and ordinal, so a sentence gets
/// the same distribution no matter which scope it is indexed under.
/// OpenMP-parallel; bitwise identical to the serial reference.
SentenceIndex build_index(const LdaModel& model,
                          const std::vector<IndexedUser>& corpora,
                          int iterations, uint64_t seed);
SentenceIndex build_index_serial(const LdaModel& model,
                                 const std::vector<IndexedUser>& corpora,
                                 int iterations, uint64_t seed);

/// Top-N entries by similarity; ties broken by (user_id, ordinal). N larger
/// than the index returns everything. `exclude` drops one key from
/// consideration (a training sentence must not match itself).
/// Similarity evaluation is OpenMP-parallel with a deterministic selection.
std::vector<const IndexEntry*> nearest_sentences(
    const TopicDistribution& query, const SentenceIndex& index, int n,
    Similarity metric = Similarity::kCosine,
    const std::optional<SentenceKey>& exclude = std::nullopt);
std::vector<const IndexEntry*> nearest_sentences_serial(
    const TopicDistribution& query, const SentenceIndex& index, int n,
    Similarity metric = Similarity::kCosine,
    const std::optional<SentenceKey>& exclude = std::nullopt);

/// Mean of the N nearest distributions for a query distribution already in
/// hand; optionally averaged with the query itself. Empty index degrades to
/// uniform.
UserFeature sentence_dependent_feature_for_query(
    const TopicDistribution& query, const SentenceIndex& index, int n,
    bool average_with_query, Similarity metric,
    const std::optional<SentenceKey>& exclude, SearchScope scope);

/// Infers the query distribution from the sentence, then searches.
UserFeature sentence_dependent_feature(
    const LdaModel& model, const Sentence& sentence, const SentenceIndex& index,
    int n, bool average_with_query, int iterations, uint64_t seed,
    Similarity metric = Similarity::kCosine,
    const std::optional<SentenceKey>& exclude = std::nullopt,
    SearchScope scope = SearchScope::kPersonal);

/// Feature file line: user_id <TAB> ordinal-or-"*" <TAB> K reals.
/// "*" rows are user-dependent features; numbered rows are per-sentence.
void save_features(const std::string& path,
                   const std::vector<std::pair<SentenceKey, TopicDistribution>>& rows,
                   const std::vector<std::pair<std::string, TopicDistribution>>& user_rows);

struct FeatureFile {
  std::vector<std::pair<SentenceKey, TopicDistribution>> sentence_rows;
  std::vector<std::pair<std::string, TopicDistribution>> user_rows;
};
FeatureFile load_features(const std::string& path);

}  // namespace ucflm

#endif  // UCFLM_FEATURES_HPP
