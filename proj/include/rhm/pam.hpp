#pragma once

#include "rhm/haplotype.hpp"

namespace rhm {

/// Partitioning-around-medoids (BUILD + SWAP) on the distinct haplotypes
/// of db, Manhattan distance on allele vectors, each distinct type
/// weighted by its multiplicity. Returns c distinct medoids, one per
/// row. Deterministic: ties are broken toward the lexicographically
/// smaller candidate.
Eigen::MatrixXi pam_init(const Database& db, int c);

}  // namespace rhm
