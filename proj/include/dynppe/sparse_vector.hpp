#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dynppe/graph.hpp"

namespace dynppe {

// Sparse real vector indexed by NodeId, backed by an open-addressing table
// (linear probing, backward-shift deletion) so the hot push loops touch one
// contiguous slot per probe. Entries whose magnitude drops below
// kPruneThreshold are erased, so exact zeros are never stored and floating
// point residue cannot accumulate permanent nonzeros.
//
// Iteration (for_each, l1_norm) walks slots in table order, which is a
// deterministic function of the operation history; anything that needs a
// canonical order uses sorted_entries().
class SparseVector {
 public:
  static constexpr double kPruneThreshold = 1e-15;

  SparseVector() = default;

  double get(NodeId u) const {
    if (size_ == 0) return 0.0;
    const Slot& s = slots_[find_slot(u)];
    return s.key == u ? s.value : 0.0;
  }

  void set(NodeId u, double value) {
    if (std::abs(value) < kPruneThreshold) {
      erase(u);
      return;
    }
    slots_[prepare_slot(u)].value = value;
  }

  void add(NodeId u, double delta) { add_and_get(u, delta); }

  // Returns the stored value after the update (0.0 once pruned).
  double add_and_get(NodeId u, double delta) {
    std::size_t i = prepare_slot(u);
    double next = slots_[i].value + delta;
    if (std::abs(next) < kPruneThreshold) {
      erase_slot(i);
      return 0.0;
    }
    slots_[i].value = next;
    return next;
  }

  double l1_norm() const {
    double sum = 0.0;
    for (const Slot& s : slots_) {
      if (s.key != kEmpty) sum += std::abs(s.value);
    }
    return sum;
  }

  std::size_t nnz() const { return size_; }
  bool empty() const { return size_ == 0; }

  void clear() {
    for (Slot& s : slots_) s.key = kEmpty;
    size_ = 0;
  }

  template <typename F>
  void for_each(F&& fn) const {
    for (const Slot& s : slots_) {
      if (s.key != kEmpty) fn(s.key, s.value);
    }
  }

  // Entries in ascending NodeId order.
  std::vector<std::pair<NodeId, double>> sorted_entries() const {
    std::vector<std::pair<NodeId, double>> out;
    out.reserve(size_);
    for_each([&](NodeId u, double v) { out.emplace_back(u, v); });
    std::sort(out.begin(), out.end());
    return out;
  }

  // Prefetches the probe line for an upcoming access.
  void prefetch(NodeId u) const {
    if (!slots_.empty()) {
      __builtin_prefetch(&slots_[bucket_of(u)]);
    }
  }

 private:
  static constexpr NodeId kEmpty = 0xffffffffu;

  struct Slot {
    NodeId key = kEmpty;
    double value = 0.0;
  };

  static std::uint32_t mix(std::uint32_t x) {
    x ^= x >> 16;
    x *= 0x85ebca6bu;
    x ^= x >> 13;
    x *= 0xc2b2ae35u;
    x ^= x >> 16;
    return x;
  }

  std::size_t bucket_of(NodeId u) const { return mix(u) & mask_; }

  // First slot holding u, or the empty slot where u would go.
  std::size_t find_slot(NodeId u) const {
    std::size_t i = bucket_of(u);
    while (slots_[i].key != u && slots_[i].key != kEmpty) {
      i = (i + 1) & mask_;
    }
    return i;
  }

  // Slot of u, inserting a zero entry (and growing) as needed.
  std::size_t prepare_slot(NodeId u) {
    if (slots_.empty()) rehash(16);
    std::size_t i = find_slot(u);
    if (slots_[i].key == u) return i;
    if ((size_ + 1) * 10 > slots_.size() * 7) {
      rehash(slots_.size() * 2);
      i = find_slot(u);
    }
    slots_[i].key = u;
    slots_[i].value = 0.0;
    ++size_;
    return i;
  }

  void erase(NodeId u) {
    if (size_ == 0) return;
    std::size_t i = find_slot(u);
    if (slots_[i].key == u) erase_slot(i);
  }

  // Backward-shift deletion keeps probe chains unbroken without tombstones.
  void erase_slot(std::size_t i) {
    std::size_t j = i;
    while (true) {
      j = (j + 1) & mask_;
      if (slots_[j].key == kEmpty) break;
      std::size_t k = bucket_of(slots_[j].key);
      // Keep walking while k lies cyclically in (i, j]; those entries still
      // reach their probe chain through j.
      bool in_range = i <= j ? (i < k && k <= j) : (i < k || k <= j);
      if (in_range) continue;
      slots_[i] = slots_[j];
      i = j;
    }
    slots_[i].key = kEmpty;
    --size_;
  }

  void rehash(std::size_t capacity) {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(capacity, Slot{});
    mask_ = capacity - 1;
    for (const Slot& s : old) {
      if (s.key == kEmpty) continue;
      slots_[find_slot(s.key)] = s;
    }
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace dynppe
