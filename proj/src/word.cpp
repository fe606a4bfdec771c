#include "crossratio/word.hpp"

#include <cctype>
#include <cstdlib>

namespace crossratio {

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : s_(text) {}

  Word parse() {
    Word w = sequence();
    skip_separators();
    if (pos_ != s_.size()) fail("unexpected character");
    return free_reduce(w);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ValidationError("malformed word '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  bool starts_with(std::string_view p) const { return s_.substr(pos_).substr(0, p.size()) == p; }

  void skip_separators() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*' || s_[pos_] == '.') {
        ++pos_;
      } else if (starts_with("\xC2\xB7")) {  // middle dot
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  Word sequence() {
    Word out;
    for (;;) {
      skip_separators();
      if (pos_ == s_.size() || s_[pos_] == ')') return out;
      Word f = factor();
      out.insert(out.end(), f.begin(), f.end());
    }
  }

  Word factor() {
    Word atom;
    if (s_[pos_] == '(') {
      ++pos_;
      atom = sequence();
      if (pos_ == s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      atom.push_back({std::string(s_.substr(start, pos_ - start)), 1});
    } else {
      fail("expected a generator name or '('");
    }
    long e = exponent();
    Word out;
    Word base = e < 0 ? inverse(atom) : atom;
    for (long i = 0; i < std::labs(e); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  /// Superscript digit value at pos_, or -1.
  int superscript_digit() const {
    if (starts_with("\xC2\xB9")) return 1;
    if (starts_with("\xC2\xB2")) return 2;
    if (starts_with("\xC2\xB3")) return 3;
    if (starts_with("\xE2\x81\xB0")) return 0;
    if (pos_ + 2 < s_.size() && s_[pos_] == '\xE2' && s_[pos_ + 1] == '\x81') {
      auto c = static_cast<unsigned char>(s_[pos_ + 2]);
      if (c >= 0xB4 && c <= 0xB9) return c - 0xB4 + 4;
    }
    return -1;
  }

  long exponent() {
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      bool brace = pos_ < s_.size() && s_[pos_] == '{';
      if (brace) ++pos_;
      std::size_t start = pos_;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      if (digits.empty() || digits == "-" || digits == "+") fail("missing exponent");
      if (brace) {
        if (pos_ == s_.size() || s_[pos_] != '}') fail("missing '}'");
        ++pos_;
      }
      return std::stol(digits);
    }
    bool negative = false;
    if (starts_with("\xE2\x81\xBB")) {  // superscript minus
      negative = true;
      pos_ += 3;
    }
    long value = 0;
    bool any = false;
    for (int d; (d = superscript_digit()) >= 0;) {
      value = value * 10 + d;
      pos_ += (s_[pos_] == '\xC2') ? 2 : 3;
      any = true;
    }
    if (negative && !any) fail("superscript minus without digits");
    if (!any) return 1;
    return negative ? -value : value;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string to_string(const Word& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += l.name;
    if (l.power < 0) s += "^-1";
  }
  return s;
}

Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->name, -it->power});
  return r;
}

Word free_reduce(const Word& w) {
  Word r;
  for (const auto& l : w) {
    if (!r.empty() && r.back().name == l.name && r.back().power == -l.power) {
      r.pop_back();
    } else {
      r.push_back(l);
    }
  }
  return r;
}

std::pair<int, int> exponent_split(const Word& w, const std::string& name) {
  std::pair<int, int> s{0, 0};
  for (const auto& l : w) {
    if (l.name != name) continue;
    (l.power > 0 ? s.first : s.second) += l.power;
  }
  return s;
}

}  // namespace crossratio
