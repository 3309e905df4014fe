// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "micromag/fields.hpp"
#include "micromag/geometry.hpp"
#include "micromag/kernels.hpp"

namespace micromag {

/// One energy evaluation record. total is assembled in the fixed order
/// exchange + magnetostatic + anisotropy + dmi (disabled terms contribute
/// exact zeros), so it equals the sum of the printed parts bitwise.
struct EnergyBreakdown {
    double exchange = 0.0;
    double magnetostatic = 0.0;
    double anisotropy = 0.0;
    double dmi = 0.0;
    double total = 0.0;
    double mesh_h = 0.0;
    std::string kernel_name;
    std::size_t pair_count = 0;
    double elapsed_seconds = 0.0;
};

enum class PsiKind { squared_chord, squared_geodesic };

/// Pair potential of the generalized functional: psi on target values and K
/// on point pairs. With squared_chord and K = j the functional coincides with
/// the exchange energy (bit-identical summation). lambda records the growth
/// bound relating psi to the squared chord; for the geodesic distance on S^2
/// it is pi^2/4.
struct PairPotential {
    PsiKind psi = PsiKind::squared_chord;
    std::function<double(const Vec3&, const Vec3&)> custom_K; // empty: K = kernel j
    double lambda = M_PI * M_PI / 4.0;
};

/// Anisotropy density phi : S^2 -> [0, inf) with its gradient and a Lipschitz
/// constant (used only as metadata for bound checks).
struct Anisotropy {
    std::string name;
    std::function<double(const Vec3&)> phi;
    std::function<Vec3(const Vec3&)> grad;
    double lipschitz = 0.0;
};

/// phi_e(p) = strength * (1 - (p.e)^2); vanishes along the easy axis.
Anisotropy uniaxial_anisotropy(const Vec3& easy_axis, double strength = 1.0);

/// Odd vector kernel of the antisymmetric exchange term.
struct DmiKernel {
    std::string name;
    std::function<Vec3(const Vec3&)> evaluator;
    double l1_continuum = 0.0; // int |mu| dz when known
};

/// mu(z) = amplitude * z * exp(-|z|^2); odd, integrable, |mu|_L1 = 2 pi a.
DmiKernel gaussian_dmi(double amplitude);

struct EnergyModel {
    const Kernel* kernel = nullptr;
    bool exchange = true;
    bool magnetostatic = true;
    std::optional<Anisotropy> anisotropy;
    std::optional<DmiKernel> dmi;
    std::size_t cache_budget_bytes = std::size_t(256) << 20;
};

/// Holds the per-(mesh, model) offset-class caches so repeated evaluations
/// (line searches, sweeps) do not rebuild them. Immutable after construction;
/// safe to share across threads for concurrent reads.
class EnergyContext {
  public:
    EnergyContext(const BallMesh& mesh, const EnergyModel& model);

    EnergyBreakdown breakdown(const Magnetization& m) const;
    double energy(const Magnetization& m) const { return breakdown(m).total; }

    /// Euclidean gradient of the discrete total energy, cell by cell.
    std::vector<Vec3> gradient(const Magnetization& m) const;

    struct Eval {
        EnergyBreakdown breakdown;
        std::vector<Vec3> gradient;
    };
    /// Energy and gradient in one pass; the demag field is computed once.
    Eval evaluate_with_gradient(const Magnetization& m) const;

    const EnergyModel& model() const { return model_; }
    const BallMesh& mesh() const { return *mesh_; }
    bool exchange_cached() const { return jtab_.has_value(); }

  private:
    const BallMesh* mesh_;
    EnergyModel model_;
    std::optional<OffsetTable> jtab_;
    std::optional<OffsetTable> mutab_;

    double exchange_term(const Magnetization& m) const;
    double dmi_term(const Magnetization& m) const;
};

/// J = sum over ordered pairs i != j of j(x_i - x_j) |m_i - m_j|^2 w_i w_j.
double exchange_energy(const BallMesh& mesh, const Kernel& k, const Magnetization& m);

/// F = sum over ordered pairs of K(x_i, x_j) psi(m_i, m_j) w_i w_j. Custom K
/// values must be non-negative; the geodesic psi is arccos^2 of the clamped
/// dot product.
double generalized_energy(const BallMesh& mesh, const PairPotential& pot, const Kernel& k,
                          const Magnetization& m);

double anisotropy_energy(const BallMesh& mesh, const Anisotropy& aniso, const Magnetization& m);

/// D = sum over ordered pairs of mu(x_i - x_j) . (m_i x m_j) w_i w_j.
/// Oddness of mu is spot-checked by sampling; violations are an error.
double dmi_energy(const BallMesh& mesh, const DmiKernel& mu, const Magnetization& m);

/// Discrete uniform L1 norm: max_i sum_{j != i} |mu(x_i - x_j)| w_j. This is
/// the constant entering the discrete Lipschitz bound of the dmi term.
double dmi_l1_norm_discrete(const BallMesh& mesh, const DmiKernel& mu);

EnergyBreakdown total_energy(const BallMesh& mesh, const EnergyModel& model,
                             const Magnetization& m);

} // namespace micromag
