#include "ucflm/vocab.hpp"

#include <fstream>

#include "ucflm/error.hpp"
#include "ucflm/text_io.hpp"

namespace ucflm {

Vocabulary::Vocabulary() {
  add_word("<s>");
  add_word("</s>");
  add_word("<unk>");
}

int Vocabulary::add_word(const std::string& word) {
  if (word_to_id_.count(word)) {
    throw DataError("duplicate word in vocabulary: " + word);
  }
  int id = static_cast<int>(id_to_word_.size());
  word_to_id_.emplace(word, id);
  id_to_word_.push_back(word);
  return id;
}

int Vocabulary::id(const std::string& word) const {
  auto it = word_to_id_.find(word);
  return it == word_to_id_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(const std::string& word) const {
  return word_to_id_.count(word) != 0;
}

Sentence Vocabulary::encode(const std::vector<std::string>& tokens) const {
  Sentence s;
  s.ids.reserve(tokens.size());
  for (const auto& t : tokens) s.ids.push_back(id(t));
  return s;
}

std::vector<std::string> Vocabulary::decode(const Sentence& sentence) const {
  std::vector<std::string> out;
  out.reserve(sentence.ids.size());
  for (int id : sentence.ids) {
    if (id < 0 || id >= size()) throw DataError("id out of range in decode");
    out.push_back(id_to_word_[id]);
  }
  return out;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out = open_output(path);
  for (int i = 0; i < size(); ++i) {
    out << id_to_word_[i] << '\t' << i << '\n';
  }
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in = open_input(path);
  Vocabulary v;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split_char(line, '\t');
    if (fields.size() != 2) {
      throw DataError("vocabulary file " + path + " line " +
                      std::to_string(line_no) + ": expected word<TAB>id");
    }
    int id = std::stoi(fields[1]);
    if (id < 3) {
      // specials are created by the constructor; just check they agree
      if (id >= v.size() || v.word(id) != fields[0]) {
        throw DataError("vocabulary file " + path + ": specials must be " +
                        "<s>, </s>, <unk> with ids 0,1,2");
      }
      continue;
    }
    int got = v.add_word(fields[0]);
    if (got != id) {
      throw DataError("vocabulary file " + path + " line " +
                      std::to_string(line_no) + ": ids must be dense and " +
                      "in order (expected " + std::to_string(got) + ")");
    }
  }
  return v;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  for (char ch : line) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      flush();
      continue;
    }
    if (c >= 'A' && c <= 'Z') {
      cur.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      cur.push_back(ch);
    }
  }
  flush();
  return tokens;
}

}  // namespace ucflm
