#include "ucflm/lda.hpp"

#include <cmath>
#include <fstream>

#include "ucflm/error.hpp"
#include "ucflm/rng.hpp"
#include "ucflm/text_io.hpp"

namespace ucflm {

namespace {

bool usable_token(int id, int vocab_size) {
  return id > Vocabulary::kUnk && id < vocab_size;
}

std::vector<int> usable_tokens(const Sentence& doc, int vocab_size) {
  std::vector<int> toks;
  toks.reserve(doc.ids.size());
  for (int id : doc.ids) {
    if (usable_token(id, vocab_size)) toks.push_back(id);
  }
  return toks;
}

}  // namespace

TopicDistribution uniform_distribution(int k) {
  TopicDistribution d;
  d.probs.assign(k, 1.0 / k);
  return d;
}

bool is_simplex(const TopicDistribution& d, double tol) {
  double sum = 0.0;
  for (double p : d.probs) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::fabs(sum - 1.0) <= tol;
}

LdaModel train_lda(const std::vector<Sentence>& documents, int topics,
                   double alpha, double beta, int iterations, uint64_t seed,
                   int vocab_size) {
  if (topics < 2) throw DataError("train_lda: need at least 2 topics");
  if (iterations < 1) throw DataError("train_lda: need at least 1 iteration");
  if (documents.empty()) throw DataError("train_lda: no documents");
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DataError("train_lda: alpha and beta must be positive");
  }

  int max_id = 0;
  for (const auto& doc : documents) {
    for (int id : doc.ids) max_id = std::max(max_id, id + 1);
  }
  if (vocab_size == 0) {
    vocab_size = std::max(max_id, Vocabulary::kUnk + 1);
  } else if (vocab_size < max_id) {
    throw DataError("train_lda: document id exceeds vocab_size");
  }

  const int K = topics;
  const int V = vocab_size;

  // token stream per document, specials/unk dropped
  std::vector<std::vector<int>> docs;
  docs.reserve(documents.size());
  int64_t total_tokens = 0;
  for (const auto& doc : documents) {
    docs.push_back(usable_tokens(doc, V));
    total_tokens += static_cast<int64_t>(docs.back().size());
  }
  if (total_tokens == 0) {
    throw DataError("train_lda: all documents are empty after filtering");
  }

  LdaModel model;
  model.topics = K;
  model.vocab_size = V;
  model.alpha = alpha;
  model.beta = beta;
  model.topic_word_counts.assign(static_cast<size_t>(K) * V, 0);
  model.topic_totals.assign(K, 0);

  std::vector<std::vector<int>> assignments(docs.size());
  std::vector<std::vector<int64_t>> doc_topic(docs.size());

  Rng rng(mix_seed(seed, 0x1dau));

  // random initialization
  for (size_t m = 0; m < docs.size(); ++m) {
    doc_topic[m].assign(K, 0);
    assignments[m].resize(docs[m].size());
    for (size_t j = 0; j < docs[m].size(); ++j) {
      int k = static_cast<int>(rng.uniform_int(K));
      assignments[m][j] = k;
      ++doc_topic[m][k];
      ++model.topic_word_counts[static_cast<size_t>(k) * V + docs[m][j]];
      ++model.topic_totals[k];
    }
  }

  const double v_beta = V * beta;
  std::vector<double> cdf(K);
  for (int iter = 0; iter < iterations; ++iter) {
    for (size_t m = 0; m < docs.size(); ++m) {
      auto& z = assignments[m];
      auto& nd = doc_topic[m];
      for (size_t j = 0; j < docs[m].size(); ++j) {
        const int w = docs[m][j];
        const int old_k = z[j];
        --nd[old_k];
        --model.topic_word_counts[static_cast<size_t>(old_k) * V + w];
        --model.topic_totals[old_k];

        double acc = 0.0;
        for (int k = 0; k < K; ++k) {
          const double p =
              (nd[k] + alpha) *
              (model.topic_word_counts[static_cast<size_t>(k) * V + w] + beta) /
              (model.topic_totals[k] + v_beta);
          acc += p;
          cdf[k] = acc;
        }
        const int new_k = sample_cdf(cdf, rng.uniform01());
        z[j] = new_k;
        ++nd[new_k];
        ++model.topic_word_counts[static_cast<size_t>(new_k) * V + w];
        ++model.topic_totals[new_k];
      }
    }
  }
  return model;
}

TopicDistribution infer_topics(const LdaModel& model, const Sentence& document,
                               int iterations, uint64_t seed) {
  if (iterations < 1) throw DataError("infer_topics: need >= 1 iteration");
  const int K = model.topics;
  const int V = model.vocab_size;
  const std::vector<int> toks = usable_tokens(document, V);
  if (toks.empty()) return uniform_distribution(K);

  Rng rng(mix_seed(seed, 0x1f3u));
  std::vector<int> z(toks.size());
  std::vector<int64_t> nd(K, 0);
  for (size_t j = 0; j < toks.size(); ++j) {
    int k = static_cast<int>(rng.uniform_int(K));
    z[j] = k;
    ++nd[k];
  }

  const double v_beta = V * model.beta;
  const double n = static_cast<double>(toks.size());
  const double denom = n + K * model.alpha;
  const int keep_from = iterations - std::max(1, iterations / 2);

  std::vector<double> cdf(K);
  std::vector<double> accum(K, 0.0);
  int kept = 0;
  for (int iter = 0; iter < iterations; ++iter) {
    for (size_t j = 0; j < toks.size(); ++j) {
      const int w = toks[j];
      --nd[z[j]];
      double acc = 0.0;
      for (int k = 0; k < K; ++k) {
        const double p = (nd[k] + model.alpha) *
                         (model.count(k, w) + model.beta) /
                         (model.topic_totals[k] + v_beta);
        acc += p;
        cdf[k] = acc;
      }
      const int new_k = sample_cdf(cdf, rng.uniform01());
      z[j] = new_k;
      ++nd[new_k];
    }
    if (iter >= keep_from) {
      for (int k = 0; k < K; ++k) {
        accum[k] += (nd[k] + model.alpha) / denom;
      }
      ++kept;
    }
  }

  TopicDistribution out;
  out.probs.resize(K);
  for (int k = 0; k < K; ++k) out.probs[k] = accum[k] / kept;
  return out;
}

TopicDistribution infer_topics_multi(const LdaModel& model,
                                     const std::vector<Sentence>& documents,
                                     int iterations, uint64_t seed) {
  Sentence merged;
  for (const auto& doc : documents) {
    merged.ids.insert(merged.ids.end(), doc.ids.begin(), doc.ids.end());
  }
  return infer_topics(model, merged, iterations, seed);
}

std::vector<TopicDistribution> infer_topics_batch(
    const LdaModel& model, const std::vector<Sentence>& documents,
    int iterations, uint64_t seed) {
  std::vector<TopicDistribution> out(documents.size());
  const int64_t n = static_cast<int64_t>(documents.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t i = 0; i < n; ++i) {
    out[i] = infer_topics(model, documents[i], iterations,
                          mix_seed(seed, static_cast<uint64_t>(i)));
  }
  return out;
}

std::vector<TopicDistribution> infer_topics_batch_serial(
    const LdaModel& model, const std::vector<Sentence>& documents,
    int iterations, uint64_t seed) {
  std::vector<TopicDistribution> out(documents.size());
  for (size_t i = 0; i < documents.size(); ++i) {
    out[i] = infer_topics(model, documents[i], iterations,
                          mix_seed(seed, static_cast<uint64_t>(i)));
  }
  return out;
}

double heldout_log_likelihood(const LdaModel& model,
                              const std::vector<Sentence>& documents,
                              int iterations, uint64_t seed) {
  const auto thetas = infer_topics_batch(model, documents, iterations, seed);
  const int V = model.vocab_size;
  const double v_beta = V * model.beta;
  double total = 0.0;
  for (size_t i = 0; i < documents.size(); ++i) {
    for (int w : usable_tokens(documents[i], V)) {
      double p = 0.0;
      for (int k = 0; k < model.topics; ++k) {
        const double phi = (model.count(k, w) + model.beta) /
                           (model.topic_totals[k] + v_beta);
        p += thetas[i].probs[k] * phi;
      }
      total += std::log(p);
    }
  }
  return total;
}

void LdaModel::save(const std::string& path) const {
  std::ofstream out = open_output(path);
  out << "ucflm-lda 1\n";
  out << topics << ' ' << vocab_size << '\n';
  out << fmt_double(alpha) << ' ' << fmt_double(beta) << '\n';
  for (int k = 0; k < topics; ++k) {
    for (int w = 0; w < vocab_size; ++w) {
      if (w) out << ' ';
      out << count(k, w);
    }
    out << '\n';
  }
}

LdaModel LdaModel::load(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "ucflm-lda" || version != 1) {
    throw DataError("not a ucflm-lda v1 model file: " + path);
  }
  LdaModel m;
  in >> m.topics >> m.vocab_size >> m.alpha >> m.beta;
  if (!in || m.topics < 1 || m.vocab_size < 1) {
    throw DataError("malformed LDA model header: " + path);
  }
  m.topic_word_counts.assign(
      static_cast<size_t>(m.topics) * m.vocab_size, 0);
  m.topic_totals.assign(m.topics, 0);
  for (int k = 0; k < m.topics; ++k) {
    int64_t row_total = 0;
    for (int w = 0; w < m.vocab_size; ++w) {
      int64_t c;
      in >> c;
      if (!in || c < 0) throw DataError("malformed LDA count matrix: " + path);
      m.topic_word_counts[static_cast<size_t>(k) * m.vocab_size + w] = c;
      row_total += c;
    }
    m.topic_totals[k] = row_total;
  }
  return m;
}

}  // namespace ucflm
