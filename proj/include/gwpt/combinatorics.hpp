#pragma once

#include "gwpt/rational.hpp"

#include <vector>

namespace gwpt {

using IntPartition = std::vector<int>;               // weakly decreasing, positive
using SetPartition = std::vector<std::vector<int>>;  // blocks of indices

// partitions of n into exactly len positive parts
std::vector<IntPartition> partitions_of_length(int n, int len);
// product of multiplicity factorials
Rational aut(const IntPartition& mu);
// all set partitions of {0, ..., m-1}, blocks listed in order of their smallest element
std::vector<SetPartition> set_partitions(int m);

}  // namespace gwpt
