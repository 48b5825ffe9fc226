#ifndef GIBC_PARALLEL_HPP
#define GIBC_PARALLEL_HPP

namespace gibc {

/// Worker count for the OpenMP kernels, read from GIBC_FEM_THREADS.
/// Unset, empty, "0" or "1" all mean sequential execution (returns 1).
int thread_count();

/// Parses a GIBC_FEM_THREADS-style value; exposed for tests.
int parse_thread_env(const char* value);

} // namespace gibc

#endif
