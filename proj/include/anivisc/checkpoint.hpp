#pragma once

#include <filesystem>

#include "anivisc/spectral_field.hpp"

namespace anivisc {

/// Binary snapshot of a VelocityState ("ANSH" format, see docs/checkpoint-format.md).
void write_checkpoint(const std::filesystem::path& path, const VelocityState& state);
VelocityState read_checkpoint(const std::filesystem::path& path);

}  // namespace anivisc
