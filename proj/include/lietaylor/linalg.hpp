#pragma once

// Small dense complex linear algebra helpers shared by every module:
// stack-bounded matrix types, compensated summation, spectral norms,
// gated principal logarithms and a branch-choosing square root.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace lietaylor {

using cd = std::complex<double>;

// Ambient matrices stay tiny (<= 8x8), so bound the dynamic storage and keep
// everything on the stack; the derivative quadrature multiplies millions of
// these per run.
constexpr int kMaxAmbient = 8;
using CMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxAmbient, kMaxAmbient>;
using CVec = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, kMaxAmbient, 1>;
using CRowVec = Eigen::Matrix<cd, 1, Eigen::Dynamic, Eigen::RowMajor, 1, kMaxAmbient>;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using CVecX = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Error categories used for process exit codes: config errors exit 2,
// refusals (method not applicable / budget exceeded) exit 3.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};
struct refusal_error : std::runtime_error {
  explicit refusal_error(const std::string& what) : std::runtime_error(what) {}
};

// Neumaier compensated accumulator; summation order is fixed by every caller
// so results are identical across runs and thread counts.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct KahanSumC {
  KahanSum re, im;
  void add(cd z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cd value() const { return cd(re.value(), im.value()); }
};

inline CMat cidentity(int m) { return CMat::Identity(m, m); }

// Spectral (2-)operator norm via SVD; matrices are at most 8x8.
inline double op_norm(const CMat& a) {
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

inline double frob_norm(const CMat& a) { return a.norm(); }

inline CMat expm(const CMat& a) {
  Eigen::MatrixXcd ad = a;
  return CMat(ad.exp());
}

inline std::vector<cd> eigenvalues_of(const CMat& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, /*computeEigenvectors=*/false);
  std::vector<cd> out(a.rows());
  for (int i = 0; i < a.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

// True when the principal logarithm is defined: spectrum off (-inf, 0].
inline bool principal_log_ok(const CMat& a, cd* offending = nullptr) {
  for (cd lam : eigenvalues_of(a)) {
    double scale = std::max(1.0, std::abs(lam));
    if (lam.real() <= 0.0 && std::abs(lam.imag()) <= 1e-14 * scale) {
      if (offending) *offending = lam;
      return false;
    }
    if (std::abs(lam) <= 1e-300) {
      if (offending) *offending = lam;
      return false;
    }
  }
  return true;
}

inline std::string format_complex(cd z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return std::string(buf);
}

inline CMat logm_principal(const CMat& a) {
  cd bad;
  if (!principal_log_ok(a, &bad))
    throw std::domain_error("logm: eigenvalue " + format_complex(bad) +
                            " lies on the closed negative real axis (out of chart)");
  if (a.rows() == 1) {
    CMat r(1, 1);
    r(0, 0) = std::log(a(0, 0));
    return r;
  }
  Eigen::MatrixXcd ad = a;
  return CMat(ad.log());
}

// Square root through a complex Schur form. Eigenvalues off (-inf,0] take the
// principal branch; negative real eigenvalues take the upper-half-plane root,
// which keeps e.g. sqrt(-1) = i usable as a path waypoint on U(1).
inline CMat sqrtm_branch(const CMat& a) {
  int m = int(a.rows());
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Eigen::MatrixXcd{a});
  Eigen::MatrixXcd t = schur.matrixT();
  Eigen::MatrixXcd q = schur.matrixU();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    cd lam = t(i, i);
    double scale = std::max(1.0, std::abs(lam));
    if (lam.real() < 0.0 && std::abs(lam.imag()) <= 1e-14 * scale)
      s(i, i) = cd(0.0, std::sqrt(std::abs(lam)));
    else
      s(i, i) = std::sqrt(lam);
  }
  for (int j = 1; j < m; ++j) {
    for (int i = j - 1; i >= 0; --i) {
      cd acc = t(i, j);
      for (int k = i + 1; k < j; ++k) acc -= s(i, k) * s(k, j);
      cd denom = s(i, i) + s(j, j);
      if (std::abs(denom) < 1e-300)
        throw std::domain_error("sqrtm: singular triangular recurrence");
      s(i, j) = acc / denom;
    }
  }
  return CMat(q * s * q.adjoint());
}

// Full-precision round-trip formatting used for deterministic report bytes.
inline std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

// Realify an m x m complex matrix into a 2m^2 real vector (Re block, Im block).
inline RVec realify(const CMat& a) {
  int m2 = int(a.rows() * a.cols());
  RVec v(2 * m2);
  int k = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j, ++k) {
      v(k) = a(i, j).real();
      v(m2 + k) = a(i, j).imag();
    }
  return v;
}

inline double sup_abs(const RVec& v) {
  double m = 0;
  for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
  return m;
}

inline double sup_abs(const CVecX& v) {
  double m = 0;
  for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
  return m;
}

}  // namespace lietaylor
