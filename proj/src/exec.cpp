#include "spm/exec.hpp"

#include <atomic>

namespace spm {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

Exec default_exec() { return g_exec.load(std::memory_order_relaxed); }
void set_default_exec(Exec exec) { g_exec.store(exec, std::memory_order_relaxed); }

}  // namespace spm
