#pragma once

namespace anivisc {

/// Worker count for OpenMP regions: the OpenMP default, capped by the
/// ANIVISC_THREADS environment variable when set.
int thread_count();

/// Overrides the cap for the rest of the process (0 restores the default).
void set_thread_cap(int cap);

}  // namespace anivisc
