// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace micromag {

/// A parameter or input violates a documented precondition.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mesh resolution too coarse to be meaningful (< 8 cells).
struct MeshTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A diagnostic or formula does not apply to the given kernel/domain
/// (e.g. essential infimum is zero, or j5 parameters are missing).
struct CriterionInapplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested operation is not supported in this build (v1 scope).
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace micromag
