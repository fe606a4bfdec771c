#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "crossratio/errors.hpp"
#include "crossratio/matrix.hpp"

namespace crossratio {

/// One letter of a word in named generators: name^power with power = ±1.
struct Letter {
  std::string name;
  int power = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Parses words such as "R L", "RLLR", "R^-1 L", "R⁻¹", "(RL)^-2", "A²B⁻¹".
/// Generator names are a letter followed by digits or underscores.
/// The result is freely reduced.
Word parse_word(std::string_view text);

std::string to_string(const Word& w);
Word inverse(const Word& w);
Word free_reduce(const Word& w);

/// Total exponent of generator `name` split by sign: {positive, negative}.
std::pair<int, int> exponent_split(const Word& w, const std::string& name);

/// Product of generator matrices in word order; inverse letters use exact
/// inverses. Throws ValidationError on an unbound name and DomainError on a
/// singular generator used with a negative power.
template <class T>
Matrix<T> word_eval(const Word& word, const std::map<std::string, Matrix<T>>& generators) {
  std::size_t n = 0;
  if (!generators.empty()) n = generators.begin()->second.dim();
  std::map<std::string, Matrix<T>> inverses;
  Matrix<T> acc = Matrix<T>::identity(n);
  for (const auto& letter : word) {
    auto it = generators.find(letter.name);
    if (it == generators.end()) throw ValidationError("unbound generator '" + letter.name + "'");
    if (letter.power > 0) {
      acc = acc * it->second;
    } else {
      auto inv = inverses.find(letter.name);
      if (inv == inverses.end()) inv = inverses.emplace(letter.name, inverse(it->second)).first;
      acc = acc * inv->second;
    }
  }
  return acc;
}

}  // namespace crossratio
