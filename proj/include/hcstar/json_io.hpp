#pragma once

#include "hcstar/linalg.hpp"
#include "hcstar/report.hpp"

namespace hcstar {

/// Matrices are arrays of rows, each entry an [re, im] pair.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);
Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j);
Json complex_to_json(Cx z);
Cx complex_from_json(const Json& j);

}  // namespace hcstar
