#include "wlab/parallel.hpp"

#include <cstdlib>
#include <string>

#include "wlab/error.hpp"

namespace wlab {

unsigned resolve_jobs(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (requested < 0) throw Error(ErrorKind::BadConfig, "--jobs must be positive");
    if (const char* env = std::getenv("WEINSTOCK_LAB_JOBS"); env && *env) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::BadConfig, std::string("WEINSTOCK_LAB_JOBS is not a positive integer: ") + env);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace wlab
