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

#include "rankbundle/ostree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rankbundle {

namespace {

void require_finite(double key, const char* what) {
  if (!std::isfinite(key)) {
    throw std::invalid_argument(std::string(what) + ": key must be finite");
  }
}

[[noreturn]] void audit_failure(const std::string& message) {
  throw std::logic_error("OSTree audit: " + message);
}

}  // namespace

void OSTree::insert(double key) {
  require_finite(key, "OSTree::insert");
  if (total_ >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("OSTree::insert: multiplicity counter overflow");
  }

  // Every node on the search path gains one element in its subtree,
  // whether or not the key already exists.
  Handle parent = kNil;
  Handle cur = root_;
  while (cur != kNil) {
    Node& node = nodes_[cur];
    ++node.size;
    if (key == node.key) {
      ++node.nodesize;
      ++total_;
      return;
    }
    parent = cur;
    cur = key < node.key ? node.left : node.right;
  }

  const auto z = static_cast<Handle>(nodes_.size());
  if (z == kNil) {
    throw std::length_error("OSTree::insert: too many distinct keys");
  }
  nodes_.push_back(Node{key, 1, 1, parent, kNil, kNil, Color::kRed});
  if (parent == kNil) {
    root_ = z;
  } else if (key < nodes_[parent].key) {
    nodes_[parent].left = z;
  } else {
    nodes_[parent].right = z;
  }
  ++total_;
  repair_after_insert(z);
}

void OSTree::rotate_left(Handle x) {
  const Handle y = nodes_[x].right;
  nodes_[x].right = nodes_[y].left;
  if (nodes_[y].left != kNil) nodes_[nodes_[y].left].parent = x;
  const Handle xp = nodes_[x].parent;
  nodes_[y].parent = xp;
  if (xp == kNil) {
    root_ = y;
  } else if (nodes_[xp].left == x) {
    nodes_[xp].left = y;
  } else {
    nodes_[xp].right = y;
  }
  nodes_[y].left = x;
  nodes_[x].parent = y;

  nodes_[y].size = nodes_[x].size;
  nodes_[x].size = size_of(nodes_[x].left) + size_of(nodes_[x].right) +
                   nodes_[x].nodesize;
}

void OSTree::rotate_right(Handle x) {
  const Handle y = nodes_[x].left;
  nodes_[x].left = nodes_[y].right;
  if (nodes_[y].right != kNil) nodes_[nodes_[y].right].parent = x;
  const Handle xp = nodes_[x].parent;
  nodes_[y].parent = xp;
  if (xp == kNil) {
    root_ = y;
  } else if (nodes_[xp].right == x) {
    nodes_[xp].right = y;
  } else {
    nodes_[xp].left = y;
  }
  nodes_[y].right = x;
  nodes_[x].parent = y;

  nodes_[y].size = nodes_[x].size;
  nodes_[x].size = size_of(nodes_[x].left) + size_of(nodes_[x].right) +
                   nodes_[x].nodesize;
}

void OSTree::repair_after_insert(Handle z) {
  while (is_red(nodes_[z].parent)) {
    Handle p = nodes_[z].parent;
    const Handle g = nodes_[p].parent;  // p is red, so it is not the root
    if (p == nodes_[g].left) {
      const Handle uncle = nodes_[g].right;
      if (is_red(uncle)) {
        nodes_[p].color = Color::kBlack;
        nodes_[uncle].color = Color::kBlack;
        nodes_[g].color = Color::kRed;
        z = g;
        continue;
      }
      if (z == nodes_[p].right) {
        z = p;
        rotate_left(z);
        p = nodes_[z].parent;
      }
      nodes_[p].color = Color::kBlack;
      nodes_[g].color = Color::kRed;
      rotate_right(g);
    } else {
      const Handle uncle = nodes_[g].left;
      if (is_red(uncle)) {
        nodes_[p].color = Color::kBlack;
        nodes_[uncle].color = Color::kBlack;
        nodes_[g].color = Color::kRed;
        z = g;
        continue;
      }
      if (z == nodes_[p].left) {
        z = p;
        rotate_right(z);
        p = nodes_[z].parent;
      }
      nodes_[p].color = Color::kBlack;
      nodes_[g].color = Color::kRed;
      rotate_left(g);
    }
  }
  nodes_[root_].color = Color::kBlack;
}

std::size_t OSTree::count_smaller(double key) const {
  std::size_t visited = 0;
  return count_smaller(key, visited);
}

std::size_t OSTree::count_smaller(double key, std::size_t& visited) const {
  require_finite(key, "OSTree::count_smaller");
  std::size_t count = 0;
  visited = 0;
  Handle x = root_;
  while (x != kNil) {
    ++visited;
    const Node& node = nodes_[x];
    if (node.key < key) {
      count += size_of(node.left) + node.nodesize;
      x = node.right;
    } else {
      x = node.left;
    }
  }
  return count;
}

std::size_t OSTree::count_larger(double key) const {
  require_finite(key, "OSTree::count_larger");
  std::size_t count = 0;
  Handle x = root_;
  while (x != kNil) {
    const Node& node = nodes_[x];
    if (node.key > key) {
      count += size_of(node.right) + node.nodesize;
      x = node.left;
    } else {
      x = node.right;
    }
  }
  return count;
}

std::size_t OSTree::multiplicity(double key) const {
  require_finite(key, "OSTree::multiplicity");
  Handle x = root_;
  while (x != kNil) {
    const Node& node = nodes_[x];
    if (key == node.key) return node.nodesize;
    x = key < node.key ? node.left : node.right;
  }
  return 0;
}

std::size_t OSTree::height() const {
  if (root_ == kNil) return 0;
  // Iterative DFS; depth is logarithmic but this keeps audit code simple.
  std::size_t best = 0;
  std::vector<std::pair<Handle, std::size_t>> stack{{root_, 1}};
  while (!stack.empty()) {
    auto [h, depth] = stack.back();
    stack.pop_back();
    best = std::max(best, depth);
    if (nodes_[h].left != kNil) stack.emplace_back(nodes_[h].left, depth + 1);
    if (nodes_[h].right != kNil) stack.emplace_back(nodes_[h].right, depth + 1);
  }
  return best;
}

void OSTree::clear() noexcept {
  nodes_.clear();
  root_ = kNil;
  total_ = 0;
}

OSTree::AuditResult OSTree::audit_subtree(Handle h, Handle parent,
                                          const double* lower,
                                          const double* upper) const {
  if (h == kNil) return {0, 1, 0, 0};
  const Node& node = nodes_[h];
  std::ostringstream where;
  where << "node key " << node.key << ": ";

  if (node.parent != parent) audit_failure(where.str() + "bad parent link");
  if (lower != nullptr && !(*lower < node.key)) {
    audit_failure(where.str() + "search order violated on the left");
  }
  if (upper != nullptr && !(node.key < *upper)) {
    audit_failure(where.str() + "search order violated on the right");
  }
  if (node.nodesize == 0) audit_failure(where.str() + "zero multiplicity");
  if (node.color == Color::kRed && (is_red(node.left) || is_red(node.right))) {
    audit_failure(where.str() + "red node with red child");
  }

  const AuditResult l = audit_subtree(node.left, h, lower, &node.key);
  const AuditResult r = audit_subtree(node.right, h, &node.key, upper);
  if (l.black_height != r.black_height) {
    audit_failure(where.str() + "unequal black heights");
  }
  const std::size_t expected = l.size + r.size + node.nodesize;
  if (node.size != expected) {
    audit_failure(where.str() + "size " + std::to_string(node.size) +
                  " != " + std::to_string(expected));
  }
  return {expected,
          l.black_height + (node.color == Color::kBlack ? 1 : 0),
          1 + std::max(l.height, r.height), 1 + l.nodes + r.nodes};
}

void OSTree::audit() const {
  if (root_ == kNil) {
    if (total_ != 0 || !nodes_.empty()) audit_failure("empty root, nonzero counts");
    return;
  }
  if (nodes_[root_].color != Color::kBlack) audit_failure("red root");
  const AuditResult result = audit_subtree(root_, kNil, nullptr, nullptr);
  if (result.size != total_) audit_failure("root size != total");
  if (result.nodes != nodes_.size()) audit_failure("unreachable nodes");
  const double bound = 2.0 * std::log2(static_cast<double>(nodes_.size()) + 1.0);
  if (static_cast<double>(result.height) > bound) {
    audit_failure("height " + std::to_string(result.height) +
                  " exceeds 2*log2(r+1)");
  }
}

}  // namespace rankbundle
