#pragma once

// Exact integer linear algebra: normal forms, lattices, finite abelian groups.

#include "rigidcoh/fin_ab_group.hpp"
#include "rigidcoh/int_matrix.hpp"
#include "rigidcoh/normal_form.hpp"
#include "rigidcoh/qmodz.hpp"
#include "rigidcoh/sublattice.hpp"
