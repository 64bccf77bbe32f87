#pragma once

namespace hcstar {

/// Process-wide default tolerance (1e-9 unless overridden). Every numeric
/// routine takes an explicit tolerance argument that defaults to this value.
double default_tolerance();
void set_default_tolerance(double tol);

}  // namespace hcstar
