#pragma once

// Independent reference implementations used only by tests. Each one computes
// the same quantity as a library routine through a different route so the two
// can be checked against each other.

#include <cstddef>
#include <span>
#include <vector>

#include "driftscape/linalg.hpp"

namespace oracles {

// H0 lifetimes of a scalar set via an explicit union-find sweep over all
// pairwise distances (single linkage): every component merge at threshold t
// contributes one bar of length t. Zero-length bars are dropped. Returns the
// lifetimes sorted ascending.
std::vector<double> single_linkage_h0(std::span<const double> values);

// Eigenvalues of a symmetric matrix via characteristic-polynomial root
// bisection (Faddeev-LeVerrier coefficients, Gershgorin bracket, sign-change
// scan). Returns them sorted descending. Intended for small matrices with
// well-separated spectra.
std::vector<double> charpoly_eigenvalues(const driftscape::Matrix& a);

// Exact two-sided Mann-Whitney p-value by enumerating all C(na+nb, na) rank
// splits (no ties): p = P(U <= u_low) + P(U >= u_high) with the tail pair
// symmetric around na*nb/2, clipped to 1.
double exact_mann_whitney_p(std::size_t na, std::size_t nb, double u);

// Unpruned O(n^2) optimal-partitioning dynamic program with the
// piecewise-constant-mean L2 cost; same objective convention as pelt().
struct DpResult {
  double objective = 0.0;
  std::vector<std::size_t> breakpoints;
};
DpResult optimal_partitioning(std::span<const double> series, double penalty);

// Mean silhouette coefficient of a labeled point set (Euclidean distances).
double silhouette(const driftscape::Matrix& points,
                  std::span<const std::size_t> labels);

}  // namespace oracles
