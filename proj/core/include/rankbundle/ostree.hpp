// Copyright 2026 The rankbundle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANKBUNDLE_OSTREE_HPP_
#define RANKBUNDLE_OSTREE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace rankbundle {

/// Order statistics tree over real keys.
///
/// A red-black tree where every node stores the multiplicity of its key
/// (duplicates collapse into one node) and the total multiplicity of its
/// subtree. Insertion and both rank counts run in O(log r) for r distinct
/// keys. Nodes live in a contiguous arena indexed by 32-bit handles, so
/// clear() recycles the storage between sweeps.
///
/// Keys are compared exactly; there is no epsilon. Deletion is not supported.
class OSTree {
 public:
  OSTree() = default;

  /// Inserts one occurrence of `key`. Throws std::invalid_argument for
  /// non-finite keys.
  void insert(double key);

  /// Number of inserted keys strictly smaller than `key`, with multiplicity.
  std::size_t count_smaller(double key) const;

  /// Number of inserted keys strictly larger than `key`, with multiplicity.
  std::size_t count_larger(double key) const;

  /// count_smaller that also reports how many nodes the descent visited.
  std::size_t count_smaller(double key, std::size_t& visited) const;

  /// How many times `key` has been inserted.
  std::size_t multiplicity(double key) const;

  std::size_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return total_ == 0; }

  /// Number of nodes on the longest root-to-leaf path (0 when empty).
  std::size_t height() const;

  void clear() noexcept;
  void reserve(std::size_t distinct_keys) { nodes_.reserve(distinct_keys); }

  /// Full structural check: search order, parent links, size recurrence,
  /// red-black colouring, black height, and the 2*log2(r+1) height bound.
  /// Throws std::logic_error describing the first violation found.
  void audit() const;

 private:
  using Handle = std::uint32_t;
  static constexpr Handle kNil = std::numeric_limits<Handle>::max();

  enum class Color : std::uint8_t { kRed, kBlack };

  struct Node {
    double key;
    std::uint32_t nodesize;
    std::uint32_t size;
    Handle parent;
    Handle left;
    Handle right;
    Color color;
  };

  std::uint32_t size_of(Handle h) const noexcept {
    return h == kNil ? 0 : nodes_[h].size;
  }
  bool is_red(Handle h) const noexcept {
    return h != kNil && nodes_[h].color == Color::kRed;
  }

  void rotate_left(Handle x);
  void rotate_right(Handle x);
  void repair_after_insert(Handle z);

  struct AuditResult {
    std::size_t size;
    std::size_t black_height;
    std::size_t height;
    std::size_t nodes;
  };
  AuditResult audit_subtree(Handle h, Handle parent, const double* lower,
                            const double* upper) const;

  std::vector<Node> nodes_;
  Handle root_ = kNil;
  std::size_t total_ = 0;
};

}  // namespace rankbundle

#endif  // RANKBUNDLE_OSTREE_HPP_
