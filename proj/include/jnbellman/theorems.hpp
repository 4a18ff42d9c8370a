#pragma once

#include <vector>

#include "jnbellman/optimizers.hpp"
#include "jnbellman/report.hpp"
#include "jnbellman/verification.hpp"

namespace jnb {

/// Lower BMO^p bounds in terms of the characteristic:
///  - xi+ log(1/t) has scanned BMO^p norm eps0(p) xi+ and characteristic C;
///  - xi+(C') <= ||phi||_{BMO^2} <= |xi-(C')| for cfg.samples optimizers
///    phi+ and phi-, C' their scanned characteristic;
///  - psi at (0, C): <|psi - <psi>|> = k(C) on (0, 1), scanned BMO^1 norm >= k(C).
VerificationReport check_theorem_t3(double C, const ScanConfig& cfg, double tol = 1e-6);

/// Characteristic of e^{delta xi+ log(1/t)} equals e^{-delta xi+}/(1 - delta xi+)
/// for delta in the grid and in [1, 1/xi+).
VerificationReport check_theorem_t7(double C, const std::vector<double>& delta_grid, const ScanConfig& cfg,
                                    double tol = 1e-3);

/// Distribution envelope: attained by eta at the extremal points of the
/// vertical {x1 = 0}, never exceeded by cfg.samples random optimizers on
/// random intervals.
VerificationReport check_theorem_t8(double C, const std::vector<double>& lambda_grid, const ScanConfig& cfg,
                                    double tol = 1e-6);

/// |{|phi - <phi>_J| >= lambda}| / |J| <= (p-1)^{-1/(2-p)} e^{-eps0(p) lambda / N}
/// on (0, 1) and every scanned J, N the scanned BMO^p norm.
VerificationReport check_weak_jn(double p, const PiecewiseLogStep& phi, const std::vector<double>& lambda_grid,
                                 const ScanConfig& cfg, double tol = 1e-12);

/// G(C) = b_{p,C}(0, C)^{1/p}: increasing past e^{p-2}/(p-1), close to eps0(p)
/// at C >= 1e6, and inverted by jn_sharp_C (p > 1) or k_inverse (p = 1).
VerificationReport check_theorem_main(double p, const std::vector<double>& C_grid, const ScanConfig& cfg);

}  // namespace jnb
