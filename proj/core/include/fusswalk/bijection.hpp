#pragma once

#include "fusswalk/dyck.hpp"
#include "fusswalk/ncst.hpp"

namespace fusswalk {

/// The recursive one-to-one correspondence between 2-Dyck paths of length 3n
/// and non-crossing spanning trees with n edges: the path blocks (A1, A2, B)
/// map to the tree parts (T_A, T_B, T_C).
Ncst path_to_tree(const DyckPath& p);
DyckPath tree_to_path(const Ncst& t);

/// Concatenation property: the tree of u.v restricted to [0,n_u] is the tree
/// of u, and restricted to [n_u, n_u+n_v] is the tree of v, shifted.
bool check_concatenation(const DyckPath& u, const DyckPath& v);

}  // namespace fusswalk
