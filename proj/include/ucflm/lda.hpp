#ifndef UCFLM_LDA_HPP
#define UCFLM_LDA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ucflm/vocab.hpp"

namespace ucflm {

/// Point on the K-simplex (entries non-negative, sum 1 within 1e-9).
struct TopicDistribution {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  bool operator==(const TopicDistribution& o) const { return probs == o.probs; }
};

TopicDistribution uniform_distribution(int k);
bool is_simplex(const TopicDistribution& d, double tol = 1e-9);

/// LDA model estimated by collapsed Gibbs sampling, each sentence a
/// document. Inference freezes the count matrices, so a trained model is
/// immutable and safe for concurrent queries.
struct LdaModel {
  int topics = 0;      // K
  int vocab_size = 0;  // V
  double alpha = 0.0;  // symmetric document-topic prior (per topic)
  double beta = 0.0;   // symmetric topic-word prior
  std::vector<int64_t> topic_word_counts;  // K x V row-major
  std::vector<int64_t> topic_totals;       // length K

  int64_t count(int k, int w) const {
    return topic_word_counts[static_cast<size_t>(k) * vocab_size + w];
  }

  void save(const std::string& path) const;
  static LdaModel load(const std::string& path);
};

inline double default_alpha(int k) { return 50.0 / k; }
constexpr double kDefaultBeta = 0.01;

/// Collapsed Gibbs sampling for `iterations` full sweeps. Deterministic for
/// a fixed seed. Special/unknown ids carry no topic signal and are skipped;
/// throws DataError if no document contributes a token. vocab_size 0 means
/// "derive from the documents"; pass Vocabulary::size() so words unseen
/// here are still smoothed at inference time.
LdaModel train_lda(const std::vector<Sentence>& documents, int topics,
                   double alpha, double beta, int iterations, uint64_t seed,
                   int vocab_size = 0);

/// Gibbs sampling over one document with model counts frozen; returns the
/// smoothed empirical distribution (n_k + alpha) / (n + K*alpha) averaged
/// over the last max(1, iterations/2) sweeps. A document with no usable
/// token yields the uniform prior.
TopicDistribution infer_topics(const LdaModel& model, const Sentence& document,
                               int iterations, uint64_t seed);

/// Concatenates the documents and behaves as infer_topics.
TopicDistribution infer_topics_multi(const LdaModel& model,
                                     const std::vector<Sentence>& documents,
                                     int iterations, uint64_t seed);

/// Batch inference, one independent RNG stream per document
/// (mix_seed(seed, index)), parallelized with OpenMP. Entry i equals
/// infer_topics(model, documents[i], iterations, mix_seed(seed, i)) bit for
/// bit regardless of thread count.
std::vector<TopicDistribution> infer_topics_batch(
    const LdaModel& model, const std::vector<Sentence>& documents,
    int iterations, uint64_t seed);

/// Serial reference for infer_topics_batch; kept for tests and benchmarks.
std::vector<TopicDistribution> infer_topics_batch_serial(
    const LdaModel& model, const std::vector<Sentence>& documents,
    int iterations, uint64_t seed);

/// Per-token held-out log likelihood: infers theta per document, then
/// scores sum_w log sum_k theta_k * phi_kw. Returns 0 on empty input.
double heldout_log_likelihood(const LdaModel& model,
                              const std::vector<Sentence>& documents,
                              int iterations, uint64_t seed);

}  // namespace ucflm

#endif  // UCFLM_LDA_HPP
