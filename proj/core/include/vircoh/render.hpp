#pragma once

// Human-readable text for classes, group-ring elements and tables, and the
// parser for group-ring element literals such as "(x1 + x2)[(1 2)] - 2*x1*x2".

#include <string>
#include <string_view>
#include <vector>

#include "vircoh/exactalg.hpp"
#include "vircoh/graded_ring.hpp"
#include "vircoh/group_ring.hpp"
#include "vircoh/subring.hpp"

namespace vircoh {

std::string format_class(const RingModel& ring, const SparseVec& v);
std::string format_element(const GroupRingElement& x);

/// Sum of terms "coef * class [label]"; a missing [label] means the identity.
/// Class factors are basis names of the ring, optionally raised to a power,
/// or parenthesised sums. Throws InvalidInput.
GroupRingElement parse_element(std::string_view text, const GroupPtr& group, const RingPtr& ring);
SparseVec parse_class(std::string_view text, const RingModel& ring);

/// Rows = sectors, columns = degrees, right-aligned.
std::string format_dims_table(const DimsTable& t);
std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace vircoh
