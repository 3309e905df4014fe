// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "micromag/config.hpp"
#include "micromag/energies.hpp"
#include "micromag/kernels.hpp"
#include "micromag/minimize.hpp"
#include "micromag/regimes.hpp"

namespace micromag {

/// Builds the interaction kernel described by the [kernel] section.
Kernel kernel_from_config(const KernelSection& section);

/// Resolves mesh spacing: explicit h when set, else 2R / cells_per_diameter.
double mesh_spacing_from_config(const MeshSection& section);

/// CSV writers; every float is printed with %.17g so reruns are bit-stable.
void write_energy_csv(const std::string& path, const EnergyBreakdown& breakdown);
void write_trace_csv(const std::string& path, const std::vector<IterRecord>& trace);
void write_sweep_csv(const std::string& path, const std::vector<RegimeSweepRow>& rows);
void write_tail_csv(const std::string& path, const std::vector<TailDecayEntry>& rows);

/// Gnuplot companions for the sweep outputs.
void write_sweep_plots(const std::string& dir, const std::string& csv_name);

} // namespace micromag
