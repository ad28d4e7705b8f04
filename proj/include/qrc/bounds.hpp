#pragma once

#include "qrc/processes.hpp"

#include <array>
#include <optional>
#include <string>

namespace qrc {

enum class LogBase { E, Two, Ten };

LogBase parse_log_base(const std::string& text);
std::string to_string(LogBase base);
double log_in(LogBase base, double x);

// Rademacher bounds ---------------------------------------------------------------

/// (|Theta| R_max (C(n + R_max, R_max) - 1) + C_max) / sqrt(k)
double rademacher_bound_poly(std::size_t theta_size, int n, int r_max, double c_max, int k);
/// (|Theta| R + C_max) / sqrt(k), evaluated with R = 1 unless a verbatim R_max
/// is passed.
double rademacher_bound_lin(std::size_t theta_size, double c_max, int k, std::optional<int> verbatim_r_max = std::nullopt);
/// (|Theta| n + C_max) / sqrt(k)
double rademacher_bound_sm(std::size_t theta_size, int n, double c_max, int k);

/// |Theta| R_max (C(n + R_max, R_max) - 1) + C_max, the numerator of the
/// polynomial Rademacher bound.
double c_qrc_poly(std::size_t theta_size, int n, int r_max, double c_max);

// Risk bounds ---------------------------------------------------------------------

struct BoundInputs {
  int n = 1;
  int r_max = 1;
  double c_max = 1.0;
  std::size_t theta_size = 1;
  std::size_t m = 100;
  double delta = 0.1;
  double l_ell = 1.0;
  double e_loss_zero = 0.0;  // E|l(0, Y_0)|
  ProcessConstants process;

  // Used by the general route only.
  double r = 0.5;
  double l_r = 2.0;
  double l_h_bar = 1.0;
  double l_h0 = 1.0;

  // Channel-specific parameters for the explicit routes.
  double epsilon_ptr = 0.1;
  double alpha_min = 0.5;
  double r0 = 0.3;
  double r1 = 0.3;
  double epsilon_rrr = 0.1;

  LogBase log_base = LogBase::E;
};

struct Theorem14Constants {
  double zeta_max = 0.0;
  double s = 0.0;
  double c_0 = 0.0;  // C_0^QRC, without the (1 - r^m) factor
  double c_1 = 0.0;
  double c_2 = 0.0;
  double c_3 = 0.0;
  double c_bd = 0.0;
};

/// zeta_max = max(r, D_wy, D_wv); std::domain_error unless zeta_max < 1.
Theorem14Constants theorem14_constants(const BoundInputs& inputs, double c_qrc);

enum class BoundVariant { General, Ptr, RrrEqual, RrrUnequal };
std::string to_string(BoundVariant variant);

struct BoundReport {
  BoundVariant variant = BoundVariant::General;
  LogBase log_base = LogBase::E;
  std::size_t m = 0;
  double delta = 0.0;
  double zeta_max = 0.0;
  double r = 0.0;
  double l_h_bar = 0.0;
  double s = 0.0;
  double c_v = 0.0;
  double c_y = 0.0;
  double c_0 = 0.0;  // C_0^QRC for the general route; the explicit forms include (1 - r^m)
  double c_1 = 0.0;
  double c_2 = 0.0;
  double c_3 = 0.0;
  double c_bd = 0.0;  // C_bd or C_4
  std::array<double, 4> terms{};
  bool valid = false;
  std::optional<double> total;  // withheld when the validity condition fails

  /// Keys use the variant's symbol names (c_0_qrc, c_0_p, c_4_a_r, ...).
  [[nodiscard]] std::string to_json() const;
};

/// log m < m log(1 / zeta_max)
bool bound_validity(std::size_t m, double zeta_max, LogBase base = LogBase::E);

/// ((1 - r^m) C_0 + C_1)/m + C_2 log m/m + C_3 sqrt(log m)/sqrt(m) + C_bd sqrt(log(4/delta))/sqrt(2m)
BoundReport risk_bound_general(const BoundInputs& inputs, const Theorem14Constants& constants, std::size_t m,
                               double delta);

/// Explicit constant stack for the PTR class with r_PTR(epsilon) and the
/// polynomial readout class.
BoundReport risk_bound_ptr(const BoundInputs& inputs);

/// Where the M_xi L_y ||w^y||_1 summand of C_4 sits for RRR.
enum class C4Scope { InsideLossFactor, Outside };

/// Dispatches on r0 == r1 versus r0 > r1.
BoundReport risk_bound_rrr(const BoundInputs& inputs, C4Scope scope = C4Scope::InsideLossFactor);

/// The general-route inputs for a channel family: r, L_R, L_h_bar and L_h0
/// filled from the PTR or RRR constants and the polynomial readout class.
BoundInputs with_ptr_constants(BoundInputs inputs);
BoundInputs with_rrr_constants(BoundInputs inputs);

struct BigOParams {
  double p_1 = 0.0;
  double p_2 = 0.0;
  double p_3 = 0.0;
  double p_4 = 0.0;
  BoundVariant variant = BoundVariant::Ptr;
};

BigOParams bigo_params_ptr(const BoundInputs& inputs);
BigOParams bigo_params_rrr(const BoundInputs& inputs);

std::string to_json(const BigOParams& params);

}  // namespace qrc
