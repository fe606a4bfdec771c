#include "crossratio/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crossratio/errors.hpp"

namespace crossratio {

Length Length::of_stretch(const QuadExt& lambda) {
  if (!(lambda > QuadExt(1))) throw DomainError("stretch factor must exceed 1");
  return {log(lambda.to_enclosure()), lambda};
}

namespace {

/// Generators before inverses, then by name.
bool letter_less(const Letter& a, const Letter& b) {
  if (a.name != b.name) return a.name < b.name;
  return a.power > b.power;
}

bool word_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), letter_less);
}

bool cancels(const Letter& a, const Letter& b) { return a.name == b.name && a.power == -b.power; }

using Mat = Matrix<Rational>;

struct Alphabet {
  std::vector<Letter> letters;
  std::vector<Mat> matrices;
};

Alphabet make_alphabet(const std::map<std::string, Mat>& gens) {
  if (gens.empty()) throw ValidationError("no generators given");
  Alphabet a;
  for (const auto& [name, m] : gens) {
    if (m.rows() != 2 || m.cols() != 2 || determinant(m) != 1) {
      throw ValidationError("unsupported model: generator '" + name + "' is not a 2x2 matrix of determinant 1");
    }
    a.letters.push_back({name, 1});
    a.matrices.push_back(m);
    a.letters.push_back({name, -1});
    a.matrices.push_back(inverse(m));
  }
  std::vector<std::size_t> order(a.letters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return letter_less(a.letters[x], a.letters[y]); });
  Alphabet sorted;
  for (auto i : order) {
    sorted.letters.push_back(a.letters[i]);
    sorted.matrices.push_back(a.matrices[i]);
  }
  return sorted;
}

void explore(const Alphabet& a, unsigned radius, std::vector<std::size_t>& idx, const Mat& product,
             std::vector<SpectrumSample>& out) {
  Word w;
  for (auto i : idx) w.push_back(a.letters[i]);
  if (is_cyclically_reduced(w) && canonical_cyclic(w) == w) {
    Rational t = product.trace();
    Rational at = t < 0 ? Rational(-t) : t;
    if (at > 2) {
      QuadExt lambda = (QuadExt(at) + QuadExt::sqrt_of(at * at - 4)) / QuadExt(2);
      out.push_back({w, lambda, log(lambda.to_enclosure()), w.size()});
    }
  }
  if (idx.size() == radius) return;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    if (cancels(a.letters[idx.back()], a.letters[i])) continue;
    idx.push_back(i);
    explore(a, radius, idx, product * a.matrices[i], out);
    idx.pop_back();
  }
}

void sort_samples(std::vector<SpectrumSample>& s) {
  std::sort(s.begin(), s.end(), [](const SpectrumSample& x, const SpectrumSample& y) {
    if (x.word_length != y.word_length) return x.word_length < y.word_length;
    return word_less(x.word, y.word);
  });
}

}  // namespace

bool is_cyclically_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (cancels(w[i], w[i + 1])) return false;
  return w.size() < 2 || !cancels(w.front(), w.back());
}

Word canonical_cyclic(const Word& w) {
  if (!is_cyclically_reduced(w)) throw ValidationError("canonical form needs a cyclically reduced word");
  Word best = w;
  for (const Word& base : {w, inverse(w)}) {
    Word r = base;
    for (std::size_t k = 0; k < base.size(); ++k) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      if (word_less(r, best)) best = r;
    }
  }
  return best;
}

std::vector<SpectrumSample> enumerate_lengths_serial(const std::map<std::string, Mat>& generators, unsigned radius) {
  if (radius < 1) throw ValidationError("radius must be at least 1");
  Alphabet a = make_alphabet(generators);
  std::vector<SpectrumSample> out;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    std::vector<std::size_t> idx{i};
    explore(a, radius, idx, a.matrices[i], out);
  }
  sort_samples(out);
  return out;
}

std::vector<SpectrumSample> enumerate_lengths(const std::map<std::string, Mat>& generators, unsigned radius) {
  if (radius < 1) throw ValidationError("radius must be at least 1");
  Alphabet a = make_alphabet(generators);
  const std::size_t k = a.letters.size();
  // Two-letter prefixes give enough slabs to balance a handful of threads.
  std::vector<std::vector<std::size_t>> prefixes;
  std::vector<SpectrumSample> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (radius == 1) {
      prefixes.push_back({i});
      continue;
    }
    std::vector<std::size_t> one{i};
    // Length-1 words are handled here since the slabs start at length 2.
    Word w{a.letters[i]};
    if (canonical_cyclic(w) == w && abs(a.matrices[i].trace()) > 2) {
      std::vector<SpectrumSample> tmp;
      std::vector<std::size_t> idx{i};
      explore(a, 1, idx, a.matrices[i], tmp);
      out.insert(out.end(), tmp.begin(), tmp.end());
    }
    for (std::size_t j = 0; j < k; ++j)
      if (!cancels(a.letters[i], a.letters[j])) prefixes.push_back({i, j});
  }
  std::vector<std::vector<SpectrumSample>> parts(prefixes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t p = 0; p < prefixes.size(); ++p) {
    std::vector<std::size_t> idx = prefixes[p];
    Mat product = a.matrices[idx[0]];
    for (std::size_t q = 1; q < idx.size(); ++q) product = product * a.matrices[idx[q]];
    explore(a, radius, idx, product, parts[p]);
  }
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  sort_samples(out);
  return out;
}

namespace {

struct Candidate {
  std::vector<long> m;
  Integer lo, hi;  // |Σ m_i ℓ_i| ∈ [lo, hi] · 2^-bits
  bool undecided = false;
};

struct Scaled {
  Integer lo, hi;
};

Scaled scaled_bounds(const Enclosure& e, unsigned bits) {
  Enclosure r = e.to_bits(bits);
  Rational scale = Rational(Integer(1) << bits);
  return {floor(r.lo() * scale), ceil(r.hi() * scale)};
}

/// True when ∏ λ_i^{m_i} = 1 exactly, i.e. the combination vanishes.
bool exactly_zero(const std::vector<Length>& lengths, const std::vector<long>& m) {
  QuadExt num(1), den(1);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!lengths[i].lambda) return false;
    if (m[i] == 0) continue;
    QuadExt p = pow(*lengths[i].lambda, static_cast<int>(std::labs(m[i])));
    try {
      (m[i] > 0 ? num : den) *= p;
    } catch (const FieldMismatchError&) {
      return false;  // λs in different quadratic fields: no exact test available
    }
  }
  try {
    return num == den;
  } catch (const FieldMismatchError&) {
    return false;
  }
}

std::vector<std::vector<long>> outer_coefficients(std::size_t k, long n, bool& exhaustive,
                                                  const std::vector<Length>& lengths) {
  std::vector<std::vector<long>> tuples;
  const double budget = 1e4;
  double count = std::pow(2.0 * static_cast<double>(n) + 1, static_cast<double>(k - 1));
  exhaustive = count <= budget;
  if (!exhaustive) {
    if (k != 2) throw ValidationError("coefficient budget of 10^4 combinations exceeded for three lengths");
    // Convergent-guided: by best approximation, min over 1 ≤ q ≤ N of
    // |q ℓ₂ − p ℓ₁| is attained at a convergent denominator of ℓ₂/ℓ₁.
    auto conv = ratio_convergents(lengths[0], lengths[1], 64);
    std::set<long> qs;
    for (const auto& c : conv)
      if (c.get_den() <= n) qs.insert(c.get_den().get_si());
    for (long q : qs) {
      tuples.push_back({q});
      tuples.push_back({-q});
    }
    return tuples;
  }
  std::vector<long> cur(k - 1, -n);
  for (;;) {
    tuples.push_back(cur);
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == n) cur[i++] = -n;
    if (i == cur.size()) break;
    ++cur[i];
  }
  return tuples;
}

void evaluate_slab(const std::vector<Length>& lengths, const std::vector<Scaled>& b, const std::vector<long>& outer,
                   std::vector<Candidate>& out) {
  Integer slo = 0, shi = 0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    long m = outer[i];
    const Scaled& s = b[i + 1];
    if (m >= 0) {
      slo += s.lo * m;
      shi += s.hi * m;
    } else {
      slo += s.hi * m;
      shi += s.lo * m;
    }
  }
  // m₁ near −S/ℓ₁
  Integer mid_s = (slo + shi) / 2, mid_l = (b[0].lo + b[0].hi) / 2;
  Integer base;
  mpz_fdiv_q(base.get_mpz_t(), Integer(-mid_s).get_mpz_t(), mid_l.get_mpz_t());
  bool all_zero = std::all_of(outer.begin(), outer.end(), [](long x) { return x == 0; });
  for (long d = -1; d <= 2; ++d) {
    Integer m1 = base + d;
    if (all_zero && m1 == 0) continue;
    if (!m1.fits_slong_p()) continue;
    Candidate c;
    c.m.push_back(m1.get_si());
    c.m.insert(c.m.end(), outer.begin(), outer.end());
    Integer vlo = slo + (m1 >= 0 ? b[0].lo * m1 : b[0].hi * m1);
    Integer vhi = shi + (m1 >= 0 ? b[0].hi * m1 : b[0].lo * m1);
    if (vlo > 0) {
      c.lo = vlo;
      c.hi = vhi;
    } else if (vhi < 0) {
      c.lo = -vhi;
      c.hi = -vlo;
    } else {
      if (exactly_zero(lengths, c.m)) continue;
      c.lo = 0;
      c.hi = std::max(Integer(-vlo), vhi);
      c.undecided = true;
    }
    out.push_back(std::move(c));
  }
}

GapReport gap_search(const std::vector<Length>& lengths, long n, const Rational& eps, bool parallel) {
  if (lengths.empty()) throw ValidationError("gap statistic needs at least one length");
  if (lengths.size() > 3) throw ValidationError("exhaustive gap search supports at most three lengths");
  if (n < 1) throw ValidationError("coefficient bound N must be at least 1");
  if (eps <= 0) throw ValidationError("precision must be positive");
  for (const auto& l : lengths)
    if (certified_sign(l.value) <= 0) throw DomainError("lengths must be positive");
  GapReport report;
  report.lengths = lengths;
  report.n = n;
  if (lengths.size() == 1) {
    report.gap = refine(lengths[0].value, eps);
    report.witness = {1};
    return report;
  }
  auto tuples = outer_coefficients(lengths.size(), n, report.exhaustive, lengths);
  for (unsigned bits = 64;; bits *= 2) {
    if (bits > Enclosure::kMaxBits) throw PrecisionExhausted("gap statistic: precision budget exhausted");
    std::vector<Scaled> b;
    for (const auto& l : lengths) b.push_back(scaled_bounds(l.value, bits));
    std::vector<std::vector<Candidate>> slabs(tuples.size());
    if (parallel) {
#pragma omp parallel for schedule(static)
      for (std::size_t t = 0; t < tuples.size(); ++t) evaluate_slab(lengths, b, tuples[t], slabs[t]);
    } else {
      for (std::size_t t = 0; t < tuples.size(); ++t) evaluate_slab(lengths, b, tuples[t], slabs[t]);
    }
    const Candidate* best = nullptr;
    const Candidate* undecided = nullptr;
    Integer min_lo;
    bool first = true;
    for (const auto& slab : slabs)
      for (const auto& c : slab) {
        if (c.undecided && !undecided) undecided = &c;
        if (first || c.lo < min_lo) min_lo = c.lo;
        if (!best || c.hi < best->hi) best = &c;
        first = false;
      }
    if (!best) throw HypothesisViolation("every combination vanishes: the lengths are commensurable with N");
    Rational scale = Rational(Integer(1) << bits);
    Rational lo = Rational(min_lo) / scale, hi = Rational(best->hi) / scale;
    // Stop once the minimum is pinned to one candidate within eps.
    if (undecided && undecided->hi <= best->hi) {
      if (bits * 2 > Enclosure::kMaxBits) {
        std::string combo;
        for (long x : undecided->m) combo += (combo.empty() ? "" : ", ") + std::to_string(x);
        throw PrecisionExhausted("cannot certify the sign of the combination (" + combo + ")");
      }
      continue;
    }
    if (hi - lo > eps || best->undecided) continue;
    report.witness = best->m;
    // Orient the witness so the combination is positive.
    Integer v = 0;
    for (std::size_t i = 0; i < b.size(); ++i) v += (b[i].lo + b[i].hi) * report.witness[i];
    if (v < 0)
      for (auto& x : report.witness) x = -x;
    // The witness combination itself, kept refinable; it lies inside [lo, hi].
    Enclosure sum(Rational(0));
    for (std::size_t i = 0; i < lengths.size(); ++i)
      sum = sum + Enclosure(Rational(report.witness[i])) * lengths[i].value;
    report.gap = refine(sum, eps);
    return report;
  }
}

}  // namespace

GapReport gap_statistic(const std::vector<Length>& lengths, long n, const Rational& eps) {
  return gap_search(lengths, n, eps, true);
}

GapReport gap_statistic_serial(const std::vector<Length>& lengths, long n, const Rational& eps) {
  return gap_search(lengths, n, eps, false);
}

std::vector<Rational> ratio_convergents(const Length& l1, const Length& l2, unsigned depth) {
  if (certified_sign(l1.value) <= 0 || certified_sign(l2.value) <= 0) throw DomainError("lengths must be positive");
  // l2/l1 = p/q exactly iff λ₂^q = λ₁^p. Only tried for small exponents.
  auto exact_ratio = [&](const Integer& p, const Integer& q) {
    if (!l1.lambda || !l2.lambda || p <= 0 || q <= 0 || p > 512 || q > 512) return false;
    try {
      return pow(*l2.lambda, static_cast<int>(q.get_si())) == pow(*l1.lambda, static_cast<int>(p.get_si()));
    } catch (const FieldMismatchError&) {
      return false;
    }
  };
  Enclosure ratio = l2.value / l1.value;
  for (unsigned bits = 64; bits <= Enclosure::kMaxBits; bits *= 2) {
    Enclosure r = ratio.to_bits(bits);
    Rational lo = r.lo(), hi = r.hi();
    std::vector<Rational> out;
    Integer p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p_{k-1}/q_{k-1}, p_{k-2}/q_{k-2}
    for (unsigned k = 0; k < depth; ++k) {
      Integer a = floor(lo);
      if (floor(hi) != a) {
        // The interval straddles an integer: the ratio may sit exactly on it.
        Integer b = floor(hi);
        Integer p = b * p0 + p1, q = b * q0 + q1;
        if (exact_ratio(p, q)) {
          out.push_back(make_rational(p, q));
          return out;
        }
        break;
      }
      Integer p = a * p0 + p1, q = a * q0 + q1;
      p1 = p0;
      q1 = q0;
      p0 = p;
      q0 = q;
      out.push_back(make_rational(p, q));
      if (exact_ratio(p, q)) return out;
      Rational flo = lo - a, fhi = hi - a;
      if (flo <= 0) break;
      lo = 1 / fhi;
      hi = 1 / flo;
    }
    if (out.size() == depth) return out;
  }
  throw PrecisionExhausted("continued fraction: partial quotients cannot be certified");
}

}  // namespace crossratio
