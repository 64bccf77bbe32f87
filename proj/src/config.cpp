#include "hcstar/config.hpp"

#include <atomic>

namespace hcstar {
namespace {
std::atomic<double> g_tolerance{1e-9};
}

double default_tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_default_tolerance(double tol) { g_tolerance.store(tol, std::memory_order_relaxed); }

}  // namespace hcstar
