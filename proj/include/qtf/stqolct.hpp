#pragma once

/**
 * @file stqolct.hpp
 * @brief Short-time QOLCT: S(w, u) = QOLCT[ f(x) conj(phi(x - u)) ](w).
 *
 * Window positions u are whole-sample shifts of the spatial grid, taken every
 * `stride` samples from -floor(n/2) upwards, so phi(x - u) needs no
 * interpolation. The identities that integrate over all u (energy, Moyal,
 * reconstruction) require stride 1.
 *
 * Three evaluation routes give the same coefficients:
 *   direct     literal kernel sandwich per window position
 *   via_qolct  fast QOLCT of the modified signal
 *   via_qft    QFT of the chirped modified signal, read at w / b, wrapped in
 *              the output chirps and prefactors
 */

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "qtf/grid_signal.hpp"
#include "qtf/qolct.hpp"

namespace qtf {

enum class StRoute { direct, via_qolct, via_qft };

struct StqolctPlan {
  QolctPlan qolct;
  GridSignal2D window;
  std::size_t stride = 1;
  Axis u1, u2;
  long first_shift1 = 0;  // sample shift of u-index 0 along axis 1
  long first_shift2 = 0;

  /// Throws ShapeError if the window is not on the plan's spatial grid,
  /// ParameterError for a zero window or a stride that leaves fewer than 2 positions.
  static StqolctPlan make(const QolctPlan& qolct, const GridSignal2D& window, std::size_t stride = 1);

  long shift1(std::size_t j) const { return first_shift1 + static_cast<long>(j * stride); }
  long shift2(std::size_t j) const { return first_shift2 + static_cast<long>(j * stride); }
  std::size_t positions() const { return u1.n * u2.n; }
};

/// f(x) conj(phi(x - u)); u must be grid-aligned.
GridSignal2D modified_signal(const GridSignal2D& f, const GridSignal2D& window, double u1, double u2);

/// Dense coefficients indexed (w1, w2, u1, u2), u2 fastest.
class StqolctField {
 public:
  StqolctField(Axis w1, Axis w2, Axis u1, Axis u2, OlctParams p1, OlctParams p2, std::size_t stride,
               std::vector<Quaternion> data, std::shared_ptr<const StqolctPlan> plan = nullptr);

  const Axis& w1() const { return w1_; }
  const Axis& w2() const { return w2_; }
  const Axis& u1() const { return u1_; }
  const Axis& u2() const { return u2_; }
  const OlctParams& params1() const { return p1_; }
  const OlctParams& params2() const { return p2_; }
  std::size_t stride() const { return stride_; }
  /// Producing plan, or null for fields read from disk.
  const StqolctPlan* plan() const { return plan_.get(); }

  const Quaternion& operator()(std::size_t m1, std::size_t m2, std::size_t j1, std::size_t j2) const {
    return data_[((m1 * w2_.n + m2) * u1_.n + j1) * u2_.n + j2];
  }
  std::span<const Quaternion> samples() const { return data_; }

  /// S(., u) at u-index (j1, j2) as a signal over the w grid.
  GridSignal2D slice(std::size_t j1, std::size_t j2) const;

 private:
  Axis w1_, w2_, u1_, u2_;
  OlctParams p1_, p2_;
  std::size_t stride_;
  std::vector<Quaternion> data_;
  std::shared_ptr<const StqolctPlan> plan_;
};

/**
 * Computes S(., u) for every window position and hands each slice to `visit`
 * in u order (u2 fastest). Slices are computed in parallel in fixed-size
 * batches; visits are sequential.
 */
void stqolct_for_each(const GridSignal2D& f, const StqolctPlan& plan, StRoute route,
                      const std::function<void(std::size_t j1, std::size_t j2, std::span<const Quaternion>)>& visit);

StqolctField stqolct_forward(const GridSignal2D& f, const StqolctPlan& plan, StRoute route = StRoute::via_qolct);

/// sum |S|^2 dw du over all four axes.
double stqolct_energy(const StqolctField& field);

/// Reductions that the verification checks need, gathered in one streaming pass.
struct StqolctSummary {
  Axis w1, w2;
  std::vector<double> marginal;  // sum_u |S(w, u)|^2 du, row-major over (w1, w2)
  double sup_abs = 0.0;          // max |S(w, u)|
  double energy = 0.0;           // sum_w marginal dw
  std::size_t stride = 1;
};

StqolctSummary stqolct_summarize(const GridSignal2D& f, const StqolctPlan& plan, StRoute route = StRoute::via_qolct);

/// (1 / ||phi||^2) sum_u sum_w K^-i S K^-j phi(x - u) dw du. Needs stride 1.
GridSignal2D stqolct_reconstruct(const StqolctField& field);
GridSignal2D stqolct_reconstruct(const StqolctField& field, const StqolctPlan& plan);
/// Forward followed by reconstruction without storing the dense field.
GridSignal2D stqolct_roundtrip(const GridSignal2D& f, const StqolctPlan& plan);

struct MoyalResult {
  Quaternion lhs;          // <S_phi f, S_psi g> over (w, u)
  Quaternion rhs;          // <f, g> <phi, psi>
  Quaternion rhs_swapped;  // <phi, psi> <f, g>
  Quaternion fg;           // <f, g>
  Quaternion phipsi;       // <phi, psi>
};

/// Both transforms share `qolct` and use stride 1.
MoyalResult moyal_check(const GridSignal2D& f, const GridSignal2D& g, const GridSignal2D& phi,
                        const GridSignal2D& psi, const QolctPlan& qolct);

}  // namespace qtf
