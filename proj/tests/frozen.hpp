#pragma once

// Reference values from tests/oracle/frozen_values.py (mpmath, 40 digits).
namespace frozen {

// Rod: E = L = sigma_c = 1, lambda = 0.4, beta = 0.5, d_m = 0.5.
inline constexpr double yc_i_half = 3.4722222222222222;
inline constexpr double h_i_half = 1.0416666666666667;
inline constexpr double h_i_one_integral = 1.25;
inline constexpr double sigma_i_half = 0.83333333333333333;
inline constexpr double ustar_i_half = 1.0416666666666667;
inline constexpr double sigma_ii_half = 0.57735026918962576;
inline constexpr double ustar_ii_half = 0.72168783648703221;
inline constexpr double sigma_iii_half = 0.70710678118654752;
inline constexpr double ustar_iii_half = 0.77539462175704744;
inline constexpr double gamma2_i_dm_half_x_0p1 = 0.054674590181062973;
inline constexpr double second_divergence = 0.94047979070735963;
inline constexpr double stability_bound_half = 0.74325308559006594;
inline constexpr double softening_bound_half = 2.5;

// Block: L = 2, k = 800, G_c = 0.25, G_0 = 0.025, l_c = 6.
inline constexpr double block_delta0 = 0.0079056941504209483;
inline constexpr double block_alpha0 = 0.0039528470752104742;
inline constexpr double block_P0 = 4.2163702135578391;
inline constexpr double block_alpha_lm1 = 0.0061383903084521509;
inline constexpr double block_P_lm1 = 5.4586204187383757;
inline constexpr double block_alpha_ratio_lmL = 2.5819888974716113;
inline constexpr double block_P_lmL = 6.1690852781205967;
inline constexpr double block_alpha_lm4 = 0.023717082451262845;
inline constexpr double block_P_lm4 = 4.4974615611283617;
inline constexpr double block_alpha_ratio_lmlc = 17.320508075688773;
inline constexpr double block_P_lmlc = 0.81144082593357943;
inline constexpr double block_alpha_c1 = 0.17320508075688773;
inline constexpr double block_P_c1 = 0.064150029909958418;
inline constexpr double block_work_of_separation = 0.25;

}  // namespace frozen
