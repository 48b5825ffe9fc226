#include "gibc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gibc {

int parse_thread_env(const char* value) {
    if (value == nullptr || *value == '\0') return 1;
    char* end = nullptr;
    long n = std::strtol(value, &end, 10);
    if (end == value || n < 0) return 1;
    return n <= 1 ? 1 : static_cast<int>(n);
}

int thread_count() {
    return parse_thread_env(std::getenv("GIBC_FEM_THREADS"));
}

} // namespace gibc
