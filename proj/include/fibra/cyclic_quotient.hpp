#pragma once

// Normalization of the local cyclic base change s^e = x^a y^b over a node of an SNC fiber,
// computed torically: the normalization is the affine toric surface of the lattice
// M = Z^2 + Z (a/e, b/e) over the positive quadrant. Its dual lattice N is found in Hermite
// normal form, the quadrant's primitive ray generators give the cyclic quotient type 1/k(1,q),
// and the Hirzebruch-Jung continued fraction of k/q gives the minimal resolution chain.

#include <cstdint>
#include <numeric>
#include <vector>

#include "fibra/error.hpp"

namespace fibra {

/// Hirzebruch-Jung continued fraction k/q = b1 - 1/(b2 - 1/(...)); each b_i >= 2.
inline std::vector<int> hirzebruch_jung(std::int64_t k, std::int64_t q) {
  if (k < 1 || q < 0 || q >= k || (q > 0 && std::gcd(k, q) != 1))
    throw InputError("cyclic quotient type needs 0 <= q < k with gcd(k, q) = 1");
  std::vector<int> out;
  while (q > 0) {
    std::int64_t b = (k + q - 1) / q;
    out.push_back(static_cast<int>(b));
    std::int64_t next = b * q - k;
    k = q;
    q = next;
  }
  return out;
}

/// Inverse of hirzebruch_jung: evaluates [b1, ..., br] to (k, q).
inline std::pair<std::int64_t, std::int64_t> evaluate_hirzebruch_jung(const std::vector<int>& b) {
  std::int64_t k = 1, q = 0;  // value of the empty tail is k/q = infinity
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    std::int64_t nk = std::int64_t{*it} * k - q;
    q = k;
    k = nk;
  }
  return {k, q};
}

/// Two-dimensional lattice in Hermite normal form: basis (i0, 0), (x, j0).
struct HermiteBasis {
  std::int64_t i0 = 1;
  std::int64_t x = 0;
  std::int64_t j0 = 1;
};

/// N = { (i, j) in Z^2 : a i + b j = 0 mod e }.
inline HermiteBasis dual_lattice(std::int64_t a, std::int64_t b, std::int64_t e) {
  auto in_n = [&](std::int64_t i, std::int64_t j) { return ((a * i + b * j) % e + e) % e == 0; };
  HermiteBasis h;
  h.i0 = e / std::gcd(a, e);
  for (std::int64_t j = 1; j <= e; ++j) {
    for (std::int64_t i = 0; i < h.i0; ++i) {
      if (in_n(i, j)) {
        h.x = i;
        h.j0 = j;
        return h;
      }
    }
  }
  throw StructuralError("dual lattice has no element with positive second coordinate");
}

struct LocalNodeCover {
  int a = 1;
  int b = 1;
  int e = 1;
  int points_above = 1;
  /// Length of the A_k chain of (-2)-curves over each point; 0 means the point is smooth.
  int chain_length_per_point = 0;
  /// Cyclic quotient type 1/k(1, q) of each point above.
  std::int64_t quotient_order = 1;
  std::int64_t quotient_q = 0;
  std::vector<int> chain_self_intersections;
  /// Ramification of the branch covers over the node at each point above.
  int ramification_a = 1;
  int ramification_b = 1;
};

inline LocalNodeCover local_model(int a, int b, int e) {
  if (a < 1 || b < 1 || e < 1) throw InputError("local model needs positive multiplicities and order");
  if (e % a != 0 || e % b != 0)
    throw InputError("base change order " + std::to_string(e) + " is not divisible by branch multiplicities " +
                     std::to_string(a) + ", " + std::to_string(b));
  LocalNodeCover out;
  out.a = a;
  out.b = b;
  out.e = e;
  // order of (a/e, b/e) in Q^2/Z^2: the degree of each local component over the (x, y)-plane
  const std::int64_t ord = std::lcm(std::int64_t{e} / std::gcd(a, e), std::int64_t{e} / std::gcd(b, e));
  out.points_above = static_cast<int>(e / ord);

  const HermiteBasis n = dual_lattice(a, b, e);
  const std::int64_t ray_x = n.i0;                     // u1 = (ray_x, 0)
  const std::int64_t ray_y = e / std::gcd(b, e);       // u2 = (0, ray_y)
  if (ray_y % n.j0 != 0) throw StructuralError("ray generator not in the dual lattice");
  const std::int64_t k = ray_y / n.j0;                 // |det(u1, u2)| / covolume(N)
  std::int64_t q = 0;
  for (std::int64_t cand = 1; cand < k; ++cand) {
    // (u1 + cand u2) / k must lie in N
    if (ray_x % k != 0 || (cand * ray_y) % k != 0) continue;
    std::int64_t wi = ray_x / k, wj = cand * ray_y / k;
    if (((std::int64_t{a} * wi + std::int64_t{b} * wj) % e + e) % e == 0 && std::gcd(cand, k) == 1) {
      q = cand;
      break;
    }
  }
  if (k > 1 && q == 0) throw StructuralError("could not determine cyclic quotient type");
  out.quotient_order = k;
  out.quotient_q = q;
  for (int bi : hirzebruch_jung(k, q)) {
    if (bi != 2) throw StructuralError("normalization point above a node is not an A_n double point");
    out.chain_self_intersections.push_back(-bi);
  }
  out.chain_length_per_point = static_cast<int>(out.chain_self_intersections.size());
  out.ramification_a = a / out.points_above;
  out.ramification_b = b / out.points_above;
  return out;
}

}  // namespace fibra
