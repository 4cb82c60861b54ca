#pragma once

/**
 * @file uncertainty.hpp
 * @brief Numerical forms of the uncertainty principles for the short-time QOLCT.
 *
 * Checks that integrate |S|^2 over u take a StqolctSummary, so one streaming
 * pass over the window positions serves the boundedness, energy,
 * Donoho-Stark, Pitt and logarithmic checks together. Every check returns an
 * InequalityResult whose margin is positive when the inequality holds.
 */

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtf/grid_signal.hpp"
#include "qtf/stqolct.hpp"

namespace qtf {

enum class Relation { less_eq, greater_eq, equal };

const char* to_string(Relation r);

struct InequalityResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;     // rhs - lhs for <=, lhs - rhs for >=, -|lhs - rhs| for equalities
  double tolerance = 0.0;  // absolute, or relative to |rhs| when `relative`
  bool relative = false;
  Relation relation = Relation::less_eq;
  bool pass = false;
  bool gated = true;  // false: reported only, never fails a run
  std::string note;
};

/// Fills margin and pass from the relation and tolerance.
InequalityResult make_result(std::string name, std::vector<std::pair<std::string, std::string>> params, double lhs,
                             double rhs, Relation relation, double tolerance, bool relative, bool gated = true);

struct CellSet {
  Axis axis1, axis2;
  std::vector<std::size_t> cells;  // row-major flat indices, ascending

  double measure() const { return static_cast<double>(cells.size()) * axis1.step * axis2.step; }
};

/// sqrt(energy outside M) / ||f||. Throws ParameterError for f = 0.
double epsilon_concentration(const GridSignal2D& f, const CellSet& M);

/// Smallest cell set whose complement holds at most eps^2 of the energy. 0 <= eps <= 1.
CellSet essential_support(const GridSignal2D& f, double eps);
/// Same on a nonnegative energy density sampled on (axis1, axis2).
CellSet essential_support(const Axis& axis1, const Axis& axis2, std::span<const double> density, double eps);

/// sup |S| <= ||f|| ||phi|| / (2 pi sqrt|b1 b2|), absolute slack 1e-9.
InequalityResult boundedness_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary);

/// sum |S|^2 dw du = ||phi||^2 ||f||^2 within 1e-3 relative. Stride 1.
InequalityResult energy_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary);

/// |M| |N| >= 2 pi |b1 b2| (1 - epsM - epsN)^2, N taken on the u-integrated marginal. Stride 1.
InequalityResult donoho_stark_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary,
                                    double eps_m, double eps_n);
InequalityResult donoho_stark_check(const GridSignal2D& f, const StqolctPlan& plan, double eps_m, double eps_n);

/// sum |w|^-alpha |S|^2 dw du
double pitt_lhs(const StqolctSummary& summary, double alpha);
/// C_alpha / (4 pi^2 |b1 b2|^alpha) ||phi||^2 sum |x|^alpha |f|^2 dx
double pitt_rhs(const GridSignal2D& f, const StqolctPlan& plan, double alpha);

/// lhs <= rhs (1 + 1e-6); at alpha = 0 the sides must agree within 1e-3 relative.
InequalityResult pitt_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary,
                            double alpha);

struct LogUpResult {
  InequalityResult literal;     // literal form, reported only
  InequalityResult derivative;  // (Psi(h) - Psi(0)) / (h ||phi||^2 ||f||^2) <= 1e-6
};

LogUpResult log_up_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary,
                         double h = 1e-3);

struct HardyFit {
  double beta_hat = 0.0;
  double r2 = 0.0;
  double cutoff = 0.0;  // radius of the fit region in rescaled coordinates
  std::size_t cells = 0;
  bool gaussian_decay = false;  // beta_hat > 0 and r2 >= 0.99
};

/**
 * Fits ln m = c - beta |w'|^2 with w' = ((w1 - p1)/b1, (w2 - p2)/b2) over the
 * cells with |w'| <= cutoff. cutoff <= 0 picks the largest radius on which
 * every magnitude is at least 1e-6 of the peak. Throws FitError if a
 * magnitude in the region is not positive or fewer than 3 cells remain.
 */
HardyFit hardy_decay_fit(const Axis& w1, const Axis& w2, std::span<const double> magnitude, double b1 = 1.0,
                         double p1 = 0.0, double b2 = 1.0, double p2 = 0.0, double cutoff = 0.0);
/// Fit on the pointwise modulus of a QFT spectrum.
HardyFit hardy_decay_fit(const GridSignal2D& spectrum, double cutoff = 0.0);
/// Fit on |S(., u)| at u-index (j1, j2).
HardyFit hardy_decay_fit(const GridSignal2D& f, const StqolctPlan& plan, std::size_t j1, std::size_t j2);

/// u-index of the window position nearest u = 0.
std::pair<std::size_t, std::size_t> zero_position(const StqolctPlan& plan);
/// u-index maximizing sum |f(x)| |phi(x - u)| dx.
std::pair<std::size_t, std::size_t> overlap_maximizing_position(const GridSignal2D& f, const StqolctPlan& plan);

struct BeurlingResult {
  double value = 0.0;      // +inf when saturated
  double log_value = 0.0;  // -inf for a zero integral
  bool saturated = false;  // some term or the total exceeds the double range
};

/// sum |f(x)| |phi(x - u)| |S(w, u)| e^{|x||w|} / (1 + |x| + |w|)^d dx dw du. Stride 1, d >= 0.
BeurlingResult beurling_integral(const GridSignal2D& f, const StqolctPlan& plan, double d);

}  // namespace qtf
