#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace gldp::detail {

// Eigenvalues (ascending) of a symmetric n x n matrix by cyclic Jacobi
// rotations; stops when the off-diagonal Frobenius norm drops below
// `threshold` or after 100 sweeps.
template <class T>
std::vector<T> jacobi_eigenvalues(std::vector<T> a, int n, const T& threshold) {
  using std::abs;
  using std::sqrt;
  auto at = [&](int i, int j) -> T& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    T off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (sqrt(off) < threshold) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const T apq = at(p, q);
        if (apq == 0) continue;
        const T theta = (at(q, q) - at(p, p)) / (2 * apq);
        const T t = (theta >= 0 ? T(1) : T(-1)) / (abs(theta) + sqrt(theta * theta + 1));
        const T c = 1 / sqrt(t * t + 1);
        const T s = t * c;
        for (int k = 0; k < n; ++k) {
          const T akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const T apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<T> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace gldp::detail
