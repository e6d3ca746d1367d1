#ifndef UCFLM_VOCAB_HPP
#define UCFLM_VOCAB_HPP

#include <string>
#include <unordered_map>
#include <vector>

namespace ucflm {

/// Encoded sentence: token ids, boundary tokens excluded (consumers add
/// <s>/</s> where their model needs them).
struct Sentence {
  std::vector<int> ids;

  bool empty() const { return ids.empty(); }
  size_t size() const { return ids.size(); }
  bool operator==(const Sentence& o) const { return ids == o.ids; }
};

/// Dense word<->id mapping. Ids 0..V-1; the three specials are always
/// present, distinct, and first: <s>=0, </s>=1, <unk>=2.
class Vocabulary {
 public:
  static constexpr int kBos = 0;
  static constexpr int kEos = 1;
  static constexpr int kUnk = 2;

  Vocabulary();

  // Appends a regular word; returns its id. Rejects duplicates.
  int add_word(const std::string& word);

  int size() const { return static_cast<int>(id_to_word_.size()); }

  // id of word, or kUnk when out of vocabulary
  int id(const std::string& word) const;
  bool contains(const std::string& word) const;
  const std::string& word(int id) const { return id_to_word_.at(id); }

  Sentence encode(const std::vector<std::string>& tokens) const;
  std::vector<std::string> decode(const Sentence& sentence) const;

  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

 private:
  std::unordered_map<std::string, int> word_to_id_;
  std::vector<std::string> id_to_word_;
};

/// Whitespace tokenizer; ASCII letters lowercased, everything else kept as-is.
std::vector<std::string> tokenize(const std::string& line);

}  // namespace ucflm

#endif  // UCFLM_VOCAB_HPP
