#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossratio/enclosure.hpp"
#include "crossratio/matrix.hpp"
#include "crossratio/quadext.hpp"
#include "crossratio/word.hpp"

namespace crossratio {

/// A translation length log λ with its stretch factor when known exactly.
struct Length {
  Enclosure value;
  std::optional<QuadExt> lambda;

  static Length of_stretch(const QuadExt& lambda);
};

struct SpectrumSample {
  Word word;  // canonical conjugacy-and-inversion representative
  QuadExt lambda;
  Enclosure length;
  std::size_t word_length = 0;
};

/// Least rotation of w or of w⁻¹ in lexicographic order. w must be
/// cyclically reduced.
Word canonical_cyclic(const Word& w);
bool is_cyclically_reduced(const Word& w);

/// One sample per conjugacy-and-inversion class of cyclically reduced words
/// of length ≤ radius over the generators and their inverses whose image is
/// pseudo-Anosov. Generators are 2×2 rational matrices of determinant 1.
/// Ordered by word length, then canonical word.
std::vector<SpectrumSample> enumerate_lengths(const std::map<std::string, Matrix<Rational>>& generators,
                                              unsigned radius);
std::vector<SpectrumSample> enumerate_lengths_serial(const std::map<std::string, Matrix<Rational>>& generators,
                                                     unsigned radius);

struct GapReport {
  std::vector<Length> lengths;
  long n = 0;
  Enclosure gap;                // min positive |Σ m_i ℓ_i|
  std::vector<long> witness;    // Σ m_i ℓ_i = +gap
  bool exhaustive = true;
};

/// Coefficients m₂..m_k range over [−N, N]; m₁ is the nearest-lattice
/// coefficient for each choice, so the search covers every combination
/// whose value could be minimal. The result is refined to width eps.
GapReport gap_statistic(const std::vector<Length>& lengths, long n, const Rational& eps = default_precision());
GapReport gap_statistic_serial(const std::vector<Length>& lengths, long n, const Rational& eps = default_precision());

/// Continued-fraction convergents of l2/l1, each partial quotient certified.
std::vector<Rational> ratio_convergents(const Length& l1, const Length& l2, unsigned depth);

}  // namespace crossratio
