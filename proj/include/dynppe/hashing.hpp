#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynppe/graph.hpp"
#include "dynppe/sparse_vector.hpp"

namespace dynppe {

using EmbeddingVector = std::vector<double>;

// Seeds and dimension defining the index hash h_d and the sign hash h_sgn.
struct HashConfig {
  int dim = 128;
  std::uint32_t seed_index = 0;
  std::uint32_t seed_sign = 1;

  void validate() const;  // dim >= 1, seeds differ
};

// Normative 32-bit hash; independent implementations must reproduce it
// bit-exactly to obtain byte-identical embeddings. It is the MurmurHash3
// x86_32 routine applied to the single 4-byte little-endian block `key`:
//
//   k = key * 0xcc9e2d51;  k = rotl(k, 15);  k *= 0x1b873593;
//   h = seed ^ k;          h = rotl(h, 13);  h = h * 5 + 0xe6546b64;
//   h ^= 4;                                  // input length in bytes
//   h ^= h >> 16;  h *= 0x85ebca6b;
//   h ^= h >> 13;  h *= 0xc2b2ae35;
//   h ^= h >> 16;
std::uint32_t hash32(std::uint32_t seed, std::uint32_t key);

// h_d: bucket index in [0, dim), computed as hash32(seed_index, i) mod dim.
int h_index(const HashConfig& cfg, NodeId i);

// h_sgn: +1 iff the lowest bit of hash32(seed_sign, i) is 0, else -1.
int h_sign(const HashConfig& cfg, NodeId i);

// Hash-kernel projection of a sparse estimate vector:
//   w[h_index(i)] += h_sign(i) * max(ln(p(i) * node_count), 0)
// over entries with p(i) > 0; non-positive entries are treated as zero.
// node_count must be >= 1 (the number of positive-degree nodes). Entries
// fold in the estimate's table order, which is a deterministic function of
// how the estimate was built, so identically produced inputs give
// bit-identical vectors.
EmbeddingVector project(const SparseVector& estimate, std::size_t node_count,
                        const HashConfig& cfg);

// Same projection over a dense estimate array indexed by NodeId; entries
// fold in ascending id order.
EmbeddingVector project(std::span<const double> estimate,
                        std::size_t node_count, const HashConfig& cfg);

}  // namespace dynppe
