#pragma once

#include <vector>

#include "crossratio/matrix.hpp"

namespace crossratio {

/// Tensor product of linear systems (A_j, L_j, v_j): the product map, form,
/// and base vector together with the characteristic polynomial of the map.
template <class T>
struct TensorSystem {
  std::vector<std::size_t> factor_dims;
  Matrix<T> map;
  LinearForm<T> form;
  Vec<T> base;
  Polynomial<T> charpoly;  // monic, degree = map.dim()

  std::size_t dim() const { return map.dim(); }

  /// form(map^n base) for n = 0..count-1.
  std::vector<T> orbit_values(std::size_t count) const {
    std::vector<T> out;
    out.reserve(count);
    Vec<T> x = base;
    for (std::size_t n = 0; n < count; ++n) {
      out.push_back(form(x));
      if (n + 1 < count) x = map * x;
    }
    return out;
  }
};

template <class T>
TensorSystem<T> tensor(const std::vector<Matrix<T>>& maps, const std::vector<LinearForm<T>>& forms,
                       const std::vector<Vec<T>>& vectors) {
  if (maps.empty()) throw ValidationError("tensor product of an empty family");
  if (maps.size() != forms.size() || maps.size() != vectors.size()) {
    throw ValidationError("tensor factors: maps, forms and vectors differ in count");
  }
  TensorSystem<T> sys;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    std::size_t d = maps[j].dim();
    if (forms[j].dim() != d || vectors[j].size() != d) throw ValidationError("tensor factor dimension mismatch");
    if (determinant(maps[j]) == T(0)) throw DomainError("tensor factor map is singular");
    sys.factor_dims.push_back(d);
    if (j == 0) {
      sys.map = maps[0];
      sys.form = forms[0];
      sys.base = vectors[0];
    } else {
      sys.map = kronecker(sys.map, maps[j]);
      sys.form = LinearForm<T>(kronecker(sys.form.coeffs(), forms[j].coeffs()));
      sys.base = kronecker(sys.base, vectors[j]);
    }
  }
  sys.charpoly = char_poly(sys.map);
  return sys;
}

}  // namespace crossratio
