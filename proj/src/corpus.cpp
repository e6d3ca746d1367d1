#include "ucflm/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>

#include "ucflm/error.hpp"
#include "ucflm/rng.hpp"
#include "ucflm/text_io.hpp"

namespace ucflm {

std::vector<std::string> SocialCorpus::user_ids() const {
  std::vector<std::string> ids;
  ids.reserve(users.size());
  for (const auto& [id, _] : users) ids.push_back(id);
  return ids;
}

size_t SocialCorpus::total_sentences() const {
  size_t n = 0;
  for (const auto& [_, u] : users) n += u.sentences.size();
  return n;
}

LoadResult load_corpus(const std::string& path) {
  std::ifstream in = open_input(path);
  LoadResult result;
  auto& users = result.corpus.users;
  // raw friends field per user, to detect conflicting redeclarations
  std::unordered_map<std::string, std::vector<std::string>> declared_friends;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    size_t tab1 = line.find('\t');
    size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                            : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected user<TAB>friends<TAB>sentence");
    }
    std::string user_id = line.substr(0, tab1);
    std::string friends_field = line.substr(tab1 + 1, tab2 - tab1 - 1);
    std::string text = line.substr(tab2 + 1);
    if (user_id.empty()) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": empty user id");
    }

    std::vector<std::string> friends;
    if (!friends_field.empty()) {
      for (auto& f : split_char(friends_field, ',')) {
        if (!f.empty()) friends.push_back(f);
      }
    }

    auto it = declared_friends.find(user_id);
    if (it == declared_friends.end()) {
      declared_friends.emplace(user_id, friends);
      UserCorpus uc;
      uc.user_id = user_id;
      uc.friend_ids = friends;
      users.emplace(user_id, std::move(uc));
    } else if (it->second != friends) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": duplicate user '" + user_id +
                      "' with a different friends list");
    }

    auto tokens = tokenize(text);
    if (!tokens.empty()) {
      users.at(user_id).sentences.push_back(std::move(tokens));
    }
  }

  // prune dangling, self, and repeated friend links
  for (auto& [id, uc] : users) {
    std::vector<std::string> kept;
    std::set<std::string> seen;
    for (const auto& f : uc.friend_ids) {
      if (f == id || !users.count(f) || seen.count(f)) {
        ++result.pruned_friend_links;
        continue;
      }
      seen.insert(f);
      kept.push_back(f);
    }
    uc.friend_ids = std::move(kept);
  }
  return result;
}

void save_corpus(const SocialCorpus& corpus, const std::string& path) {
  std::ofstream out = open_output(path);
  for (const auto& [id, uc] : corpus.users) {
    std::string friends;
    for (size_t i = 0; i < uc.friend_ids.size(); ++i) {
      if (i) friends += ',';
      friends += uc.friend_ids[i];
    }
    if (uc.sentences.empty()) {
      out << id << '\t' << friends << '\t' << '\n';
      continue;
    }
    for (const auto& sent : uc.sentences) {
      out << id << '\t' << friends << '\t';
      for (size_t i = 0; i < sent.size(); ++i) {
        if (i) out << ' ';
        out << sent[i];
      }
      out << '\n';
    }
  }
}

Vocabulary build_vocabulary(const SocialCorpus& corpus, size_t max_words) {
  if (max_words < 1) throw DataError("build_vocabulary: max_words must be >= 1");
  std::unordered_map<std::string, int64_t> counts;
  for (const auto& [_, uc] : corpus.users) {
    for (const auto& sent : uc.sentences) {
      for (const auto& tok : sent) ++counts[tok];
    }
  }
  std::vector<std::pair<std::string, int64_t>> ranked(counts.begin(),
                                                      counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_words) ranked.resize(max_words);

  Vocabulary vocab;
  for (const auto& [word, _] : ranked) {
    if (!vocab.contains(word)) vocab.add_word(word);
  }
  return vocab;
}

std::vector<Sentence> encode_sentences(
    const std::vector<std::vector<std::string>>& sentences,
    const Vocabulary& vocab) {
  std::vector<Sentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    if (s.empty()) continue;
    out.push_back(vocab.encode(s));
  }
  return out;
}

CvSplit split_cv(const std::vector<std::string>& target_users, int k,
                 uint64_t seed) {
  if (k < 2) throw DataError("split_cv: k must be >= 2");
  if (static_cast<size_t>(k) > target_users.size()) {
    throw DataError("split_cv: fewer target users than folds");
  }
  std::vector<std::string> shuffled(target_users);
  std::sort(shuffled.begin(), shuffled.end());
  Rng rng(mix_seed(seed, 0x5917u));
  rng.shuffle(shuffled);
  CvSplit split;
  split.folds.resize(k);
  for (size_t i = 0; i < shuffled.size(); ++i) {
    split.folds[i % k].push_back(shuffled[i]);
  }
  for (auto& fold : split.folds) std::sort(fold.begin(), fold.end());
  return split;
}

}  // namespace ucflm
