#include "dynppe/hashing.hpp"

#include <bit>
#include <cmath>

#include "dynppe/errors.hpp"

namespace dynppe {

void HashConfig::validate() const {
  if (dim < 1) {
    throw Error(ErrorKind::kConfig, "embedding dimension must be >= 1");
  }
  if (seed_index == seed_sign) {
    throw Error(ErrorKind::kConfig, "index and sign hash seeds must differ");
  }
}

std::uint32_t hash32(std::uint32_t seed, std::uint32_t key) {
  std::uint32_t k = key * 0xcc9e2d51u;
  k = std::rotl(k, 15);
  k *= 0x1b873593u;
  std::uint32_t h = seed ^ k;
  h = std::rotl(h, 13);
  h = h * 5u + 0xe6546b64u;
  h ^= 4u;
  h ^= h >> 16;
  h *= 0x85ebca6bu;
  h ^= h >> 13;
  h *= 0xc2b2ae35u;
  h ^= h >> 16;
  return h;
}

int h_index(const HashConfig& cfg, NodeId i) {
  return static_cast<int>(hash32(cfg.seed_index, i) %
                          static_cast<std::uint32_t>(cfg.dim));
}

int h_sign(const HashConfig& cfg, NodeId i) {
  return (hash32(cfg.seed_sign, i) & 1u) == 0 ? 1 : -1;
}

EmbeddingVector project(const SparseVector& estimate, std::size_t node_count,
                        const HashConfig& cfg) {
  cfg.validate();
  if (node_count < 1) {
    throw Error(ErrorKind::kConfig, "projection needs node_count >= 1");
  }
  EmbeddingVector w(static_cast<std::size_t>(cfg.dim), 0.0);
  const double floor = 1.0 / static_cast<double>(node_count);
  estimate.for_each([&](NodeId i, double p) {
    if (p <= floor) return;  // ln(p * n) <= 0 contributes nothing
    w[static_cast<std::size_t>(h_index(cfg, i))] +=
        h_sign(cfg, i) * std::log(p * static_cast<double>(node_count));
  });
  return w;
}

EmbeddingVector project(std::span<const double> estimate,
                        std::size_t node_count, const HashConfig& cfg) {
  cfg.validate();
  if (node_count < 1) {
    throw Error(ErrorKind::kConfig, "projection needs node_count >= 1");
  }
  EmbeddingVector w(static_cast<std::size_t>(cfg.dim), 0.0);
  const double floor = 1.0 / static_cast<double>(node_count);
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    double p = estimate[i];
    if (p <= floor) continue;
    w[static_cast<std::size_t>(h_index(cfg, static_cast<NodeId>(i)))] +=
        h_sign(cfg, static_cast<NodeId>(i)) *
        std::log(p * static_cast<double>(node_count));
  }
  return w;
}

}  // namespace dynppe
