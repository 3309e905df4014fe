// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/energies.hpp"

#include <chrono>
#include <cmath>

#include "micromag/errors.hpp"
#include "micromag/magnetostatics.hpp"
#include "micromag/rng.hpp"
#include "micromag/simd/pair_kernels.hpp"

namespace micromag {

Anisotropy uniaxial_anisotropy(const Vec3& easy_axis, double strength) {
    if (std::abs(easy_axis.norm() - 1.0) > 1e-12)
        throw InvalidArgument("uniaxial_anisotropy: easy axis must be a unit vector");
    Anisotropy a;
    a.name = "uniaxial";
    const Vec3 e = easy_axis;
    a.phi = [e, strength](const Vec3& p) {
        const double c = p.dot(e);
        return strength * (1.0 - c * c);
    };
    a.grad = [e, strength](const Vec3& p) { return e * (-2.0 * strength * p.dot(e)); };
    a.lipschitz = 2.0 * strength;
    return a;
}

DmiKernel gaussian_dmi(double amplitude) {
    DmiKernel mu;
    mu.name = "gaussian_dmi";
    mu.evaluator = [amplitude](const Vec3& z) { return z * (amplitude * std::exp(-z.norm2())); };
    mu.l1_continuum = 2.0 * M_PI * std::abs(amplitude);
    return mu;
}

namespace {

void check_mu_odd(const DmiKernel& mu) {
    Rng rng(99);
    for (int i = 0; i < 64; ++i) {
        const Vec3 z = rng.unit_vector() * std::pow(10.0, rng.uniform(-2.0, 1.0));
        const Vec3 a = mu.evaluator(z);
        const Vec3 b = mu.evaluator(-z);
        const double scale = a.norm() + b.norm() + 1e-300;
        if ((a + b).norm() > 1e-12 * scale)
            throw InvalidArgument("dmi kernel must be odd: mu(-z) = -mu(z)");
    }
}

} // namespace

EnergyContext::EnergyContext(const BallMesh& mesh, const EnergyModel& model)
    : mesh_(&mesh), model_(model) {
    if (model_.exchange) {
        if (!model_.kernel) throw InvalidArgument("energy model enables exchange without a kernel");
        jtab_ = build_offset_table(mesh, model_.kernel->evaluator, model_.cache_budget_bytes);
    }
    if (model_.dmi) {
        check_mu_odd(*model_.dmi);
        mutab_ = build_offset_table_vec(mesh, model_.dmi->evaluator, model_.cache_budget_bytes);
    }
}

double EnergyContext::exchange_term(const Magnetization& m) const {
    const std::size_t n = m.size();
    std::vector<double> rows(n, 0.0);
    if (jtab_) {
        const auto& kernels = simd::active_kernels();
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            kernels.exchange_row_energy(jtab_->values.data(), jtab_->code.data(), jtab_->bias,
                                        m.x.data(), m.y.data(), m.z.data(), n, i, i + 1,
                                        rows.data());
    } else {
        const auto& j = model_.kernel->evaluator;
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            double acc = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                if (static_cast<std::size_t>(i) == b) continue;
                acc += j(mesh_->offset(i, b)) * (m.get(i) - m.get(b)).norm2();
            }
            rows[i] = acc;
        }
    }
    const double w = mesh_->cell_weight;
    return w * w * tree_sum(rows);
}

double EnergyContext::dmi_term(const Magnetization& m) const {
    const std::size_t n = m.size();
    std::vector<double> rows(n, 0.0);
    if (mutab_) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            const Vec3 mi = m.get(i);
            double acc = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                const auto idx = mutab_->index(i, b);
                const Vec3 mu{mutab_->vx[idx], mutab_->vy[idx], mutab_->vz[idx]};
                acc += mu.dot(mi.cross(m.get(b)));
            }
            rows[i] = acc;
        }
    } else {
        const auto& mu = model_.dmi->evaluator;
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            const Vec3 mi = m.get(i);
            double acc = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                if (static_cast<std::size_t>(i) == b) continue;
                acc += mu(mesh_->offset(i, b)).dot(mi.cross(m.get(b)));
            }
            rows[i] = acc;
        }
    }
    const double w = mesh_->cell_weight;
    return w * w * tree_sum(rows);
}

EnergyBreakdown EnergyContext::breakdown(const Magnetization& m) const {
    if (m.mesh != mesh_) throw InvalidArgument("energy: field built on a different mesh");
    const auto t0 = std::chrono::steady_clock::now();
    EnergyBreakdown out;
    out.mesh_h = mesh_->spacing;
    out.kernel_name = model_.kernel ? model_.kernel->name : "";
    const std::size_t n = m.size();
    out.pair_count = n * (n - 1) / 2;

    if (model_.exchange) out.exchange = exchange_term(m);
    if (model_.magnetostatic) out.magnetostatic = magnetostatic_energy(*mesh_, m);
    if (model_.anisotropy) out.anisotropy = anisotropy_energy(*mesh_, *model_.anisotropy, m);
    if (model_.dmi) out.dmi = dmi_term(m);
    out.total = out.exchange + out.magnetostatic + out.anisotropy + out.dmi;
    out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<Vec3> EnergyContext::gradient(const Magnetization& m) const {
    if (m.mesh != mesh_) throw InvalidArgument("gradient: field built on a different mesh");
    const std::size_t n = m.size();
    const double w = mesh_->cell_weight;
    std::vector<Vec3> g(n, Vec3{});

    if (model_.exchange) {
        std::vector<double> gx(n, 0.0), gy(n, 0.0), gz(n, 0.0);
        if (jtab_) {
            const auto& kernels = simd::active_kernels();
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
                kernels.exchange_row_gradient(jtab_->values.data(), jtab_->code.data(), jtab_->bias,
                                              m.x.data(), m.y.data(), m.z.data(), n, i, i + 1,
                                              gx.data(), gy.data(), gz.data());
        } else {
            const auto& j = model_.kernel->evaluator;
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
                Vec3 acc{};
                for (std::size_t b = 0; b < n; ++b) {
                    if (static_cast<std::size_t>(i) == b) continue;
                    acc += (m.get(i) - m.get(b)) * j(mesh_->offset(i, b));
                }
                gx[i] = acc.x;
                gy[i] = acc.y;
                gz[i] = acc.z;
            }
        }
        const double c = 4.0 * w * w;
        for (std::size_t i = 0; i < n; ++i) g[i] += Vec3{gx[i], gy[i], gz[i]} * c;
    }
    if (model_.magnetostatic) {
        const DemagField h = demag_field(*mesh_, m);
        for (std::size_t i = 0; i < n; ++i) g[i] += h.values[i] * (-2.0 * w);
    }
    if (model_.anisotropy) {
        for (std::size_t i = 0; i < n; ++i) g[i] += model_.anisotropy->grad(m.get(i)) * w;
    }
    if (model_.dmi) {
        const double c = 2.0 * w * w;
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            Vec3 acc{};
            if (mutab_) {
                for (std::size_t b = 0; b < n; ++b) {
                    const auto idx = mutab_->index(i, b);
                    acc += m.get(b).cross({mutab_->vx[idx], mutab_->vy[idx], mutab_->vz[idx]});
                }
            } else {
                for (std::size_t b = 0; b < n; ++b) {
                    if (static_cast<std::size_t>(i) == b) continue;
                    acc += m.get(b).cross(model_.dmi->evaluator(mesh_->offset(i, b)));
                }
            }
            g[i] += acc * c;
        }
    }
    return g;
}

EnergyContext::Eval EnergyContext::evaluate_with_gradient(const Magnetization& m) const {
    if (m.mesh != mesh_) throw InvalidArgument("energy: field built on a different mesh");
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = m.size();
    const double w = mesh_->cell_weight;

    Eval out;
    out.breakdown.mesh_h = mesh_->spacing;
    out.breakdown.kernel_name = model_.kernel ? model_.kernel->name : "";
    out.breakdown.pair_count = n * (n - 1) / 2;
    out.gradient.assign(n, Vec3{});

    if (model_.exchange) {
        out.breakdown.exchange = exchange_term(m);
        std::vector<double> gx(n, 0.0), gy(n, 0.0), gz(n, 0.0);
        if (jtab_) {
            const auto& kernels = simd::active_kernels();
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
                kernels.exchange_row_gradient(jtab_->values.data(), jtab_->code.data(), jtab_->bias,
                                              m.x.data(), m.y.data(), m.z.data(), n, i, i + 1,
                                              gx.data(), gy.data(), gz.data());
        } else {
            const auto& j = model_.kernel->evaluator;
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
                Vec3 acc{};
                for (std::size_t b = 0; b < n; ++b) {
                    if (static_cast<std::size_t>(i) == b) continue;
                    acc += (m.get(i) - m.get(b)) * j(mesh_->offset(i, b));
                }
                gx[i] = acc.x;
                gy[i] = acc.y;
                gz[i] = acc.z;
            }
        }
        const double c = 4.0 * w * w;
        for (std::size_t i = 0; i < n; ++i) out.gradient[i] += Vec3{gx[i], gy[i], gz[i]} * c;
    }
    if (model_.magnetostatic) {
        const DemagField h = demag_field(*mesh_, m);
        std::vector<double> terms(n);
        for (std::size_t i = 0; i < n; ++i) terms[i] = -w * h.values[i].dot(m.get(i));
        out.breakdown.magnetostatic = tree_sum(terms);
        for (std::size_t i = 0; i < n; ++i) out.gradient[i] += h.values[i] * (-2.0 * w);
    }
    if (model_.anisotropy) {
        out.breakdown.anisotropy = anisotropy_energy(*mesh_, *model_.anisotropy, m);
        for (std::size_t i = 0; i < n; ++i)
            out.gradient[i] += model_.anisotropy->grad(m.get(i)) * w;
    }
    if (model_.dmi) {
        out.breakdown.dmi = dmi_term(m);
        const double c = 2.0 * w * w;
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            Vec3 acc{};
            if (mutab_) {
                for (std::size_t b = 0; b < n; ++b) {
                    const auto idx = mutab_->index(i, b);
                    acc += m.get(b).cross({mutab_->vx[idx], mutab_->vy[idx], mutab_->vz[idx]});
                }
            } else {
                for (std::size_t b = 0; b < n; ++b) {
                    if (static_cast<std::size_t>(i) == b) continue;
                    acc += m.get(b).cross(model_.dmi->evaluator(mesh_->offset(i, b)));
                }
            }
            out.gradient[i] += acc * c;
        }
    }
    out.breakdown.total = out.breakdown.exchange + out.breakdown.magnetostatic +
                          out.breakdown.anisotropy + out.breakdown.dmi;
    out.breakdown.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

double exchange_energy(const BallMesh& mesh, const Kernel& k, const Magnetization& m) {
    EnergyModel model;
    model.kernel = &k;
    model.exchange = true;
    model.magnetostatic = false;
    return EnergyContext(mesh, model).breakdown(m).exchange;
}

double generalized_energy(const BallMesh& mesh, const PairPotential& pot, const Kernel& k,
                          const Magnetization& m) {
    if (!pot.custom_K && pot.psi == PsiKind::squared_chord)
        return exchange_energy(mesh, k, m); // same summation path, bit-identical

    const std::size_t n = m.size();
    const double w = mesh.cell_weight;
    std::optional<OffsetTable> jtab;
    if (!pot.custom_K) jtab = build_offset_table(mesh, k.evaluator);

    const auto psi = [&](const Vec3& p, const Vec3& q) {
        if (pot.psi == PsiKind::squared_chord) return (p - q).norm2();
        const double c = std::min(1.0, std::max(-1.0, p.dot(q)));
        const double d = std::acos(c);
        return d * d;
    };

    std::vector<double> rows(n, 0.0);
    bool negative_K = false;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double acc = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            if (static_cast<std::size_t>(i) == b) continue;
            double kv;
            if (pot.custom_K) {
                kv = pot.custom_K(mesh.centers[i], mesh.centers[b]);
                if (kv < 0.0) {
#pragma omp atomic write
                    negative_K = true;
                    kv = 0.0;
                }
            } else {
                kv = jtab ? jtab->values[jtab->index(i, b)] : k.evaluator(mesh.offset(i, b));
            }
            acc += kv * psi(m.get(i), m.get(b));
        }
        rows[i] = acc;
    }
    if (negative_K) throw InvalidArgument("generalized_energy: custom K returned a negative value");
    return w * w * tree_sum(rows);
}

double anisotropy_energy(const BallMesh& mesh, const Anisotropy& aniso, const Magnetization& m) {
    std::vector<double> terms(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        terms[i] = aniso.phi(m.get(i)) * mesh.cell_weight;
        if (terms[i] < 0.0)
            throw InvalidArgument("anisotropy_energy: density must be non-negative");
    }
    return tree_sum(terms);
}

double dmi_energy(const BallMesh& mesh, const DmiKernel& mu, const Magnetization& m) {
    EnergyModel model;
    model.exchange = false;
    model.magnetostatic = false;
    model.dmi = mu;
    return EnergyContext(mesh, model).breakdown(m).dmi;
}

double dmi_l1_norm_discrete(const BallMesh& mesh, const DmiKernel& mu) {
    const std::size_t n = mesh.cell_count();
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double acc = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            if (static_cast<std::size_t>(i) == b) continue;
            acc += mu.evaluator(mesh.offset(i, b)).norm() * mesh.cell_weight;
        }
        worst = std::max(worst, acc);
    }
    return worst;
}

EnergyBreakdown total_energy(const BallMesh& mesh, const EnergyModel& model,
                             const Magnetization& m) {
    return EnergyContext(mesh, model).breakdown(m);
}

} // namespace micromag
