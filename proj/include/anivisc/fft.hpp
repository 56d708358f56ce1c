#pragma once

#include "anivisc/aligned.hpp"
#include "anivisc/grid.hpp"

// In-place complex transforms on grid-shaped buffers (i3 fastest). Both
// directions are unnormalized; callers divide the forward result by the
// point count. Buffers must be 64-byte aligned (ComplexVec).

namespace anivisc::fft {

enum class Dir { forward, backward };

/// Full 3D transform.
void transform3d(Complex* data, const Grid& grid, Dir dir);

/// 2D transform over (i1, i2) for every vertical index i3: the slice
/// ensemble used by the per-slice solvers.
void transform_h(Complex* data, const Grid& grid, Dir dir);

/// 1D transform along i3 for every horizontal point.
void transform_v(Complex* data, const Grid& grid, Dir dir);

}  // namespace anivisc::fft
