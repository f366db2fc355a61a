#pragma once

// Umbrella header: balancedly multi-splittable Hadamard matrices and
// orthogonal arrays OA_1(q^2, q+1, q, 2).

#include "bms/gauss_int.hpp"
#include "bms/dense_matrix.hpp"
#include "bms/sign_matrix.hpp"
#include "bms/quat_matrix.hpp"
#include "bms/matrix_ops.hpp"
#include "bms/combinatorics.hpp"
#include "bms/galois_field.hpp"
#include "bms/hadamard_gen.hpp"
#include "bms/ortho_array.hpp"
#include "bms/bms_construct.hpp"
#include "bms/bms_verify.hpp"
#include "bms/oa_extract.hpp"
#include "bms/io.hpp"
