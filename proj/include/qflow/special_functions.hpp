#pragma once

// Real orthogonal polynomials used by the state catalog.

namespace qflow {

inline constexpr int kMaxDegree = 64;

// Non-negative polynomial degree / quantum number, capped at kMaxDegree.
class PolyDegree {
 public:
  PolyDegree() = default;
  // Throws Error(degree_out_of_range) outside [0, kMaxDegree].
  PolyDegree(int n);  // NOLINT(google-explicit-constructor)

  int value() const noexcept { return n_; }
  operator int() const noexcept { return n_; }  // NOLINT

 private:
  int n_ = 0;
};

/// Physicists' Hermite polynomial H_n(x), from the three-term recurrence
/// H_{k+1} = 2x H_k - 2k H_{k-1}. Double-precision accurate to about n = 30.
double hermite(PolyDegree n, double x);

/// Associated Legendre function P_l^m(x) for 0 <= m <= l, |x| <= 1, without
/// the Condon-Shortley phase.
double assoc_legendre(PolyDegree l, PolyDegree m_abs, double x);

/// Normalisation of e^{-a^2 x^2/2} H_n(a x) on the real line:
/// (a / (sqrt(pi) 2^n n!))^{1/2}.
double oscillator_norm(PolyDegree n, double alpha);

}  // namespace qflow
