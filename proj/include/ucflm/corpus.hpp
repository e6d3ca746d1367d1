#ifndef UCFLM_CORPUS_HPP
#define UCFLM_CORPUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ucflm/vocab.hpp"

namespace ucflm {

/// One user's personal corpus (tokenized but not yet encoded) plus the
/// outgoing friend links.
struct UserCorpus {
  std::string user_id;
  std::vector<std::vector<std::string>> sentences;  // token strings
  std::vector<std::string> friend_ids;              // never contains user_id
};

/// Users keyed by id (ordered map: iteration order is deterministic).
/// Loaders guarantee that every friend_id resolves to a present user.
struct SocialCorpus {
  std::map<std::string, UserCorpus> users;

  std::vector<std::string> user_ids() const;
  size_t total_sentences() const;
};

struct LoadResult {
  SocialCorpus corpus;
  size_t pruned_friend_links = 0;  // dangling, self, or duplicate links dropped
};

/// Cross-validation folds over target users. Folds are disjoint, cover the
/// target set, and differ in size by at most one.
struct CvSplit {
  std::vector<std::vector<std::string>> folds;
};

/// Corpus file: one line per sentence,
///   user_id <TAB> friend,friend,... <TAB> sentence text
/// '#'-prefixed lines are comments; blank lines are skipped. The friends
/// field must be identical on every line of a user. A line with an empty
/// sentence field declares the user without adding a sentence.
LoadResult load_corpus(const std::string& path);

void save_corpus(const SocialCorpus& corpus, const std::string& path);

/// max_words most frequent tokens plus the specials; ties broken
/// lexicographically. Counts are global over every user's sentences.
Vocabulary build_vocabulary(const SocialCorpus& corpus, size_t max_words);

/// Encoded view of one user's sentences. Empty sentences are dropped.
std::vector<Sentence> encode_sentences(
    const std::vector<std::vector<std::string>>& sentences,
    const Vocabulary& vocab);

/// Deterministic seeded shuffle followed by round-robin assignment.
CvSplit split_cv(const std::vector<std::string>& target_users, int k,
                 uint64_t seed);

}  // namespace ucflm

#endif  // UCFLM_CORPUS_HPP
