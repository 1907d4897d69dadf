#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace honeybee {

using NodeId = std::uint32_t;

// Fixed-capacity bit set over dense node ids. Value semantics; equality and
// hashing are bit-exact so sets can key solver tables directly.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  static NodeSet single(std::size_t capacity, NodeId v) {
    NodeSet s(capacity);
    s.insert(v);
    return s;
  }

  static NodeSet full(std::size_t capacity) {
    NodeSet s(capacity);
    for (std::size_t i = 0; i < capacity; ++i) s.insert(static_cast<NodeId>(i));
    return s;
  }

  std::size_t capacity() const noexcept { return capacity_; }

  bool contains(NodeId v) const noexcept {
    assert(v < capacity_);
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }

  void insert(NodeId v) noexcept {
    assert(v < capacity_);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }

  void erase(NodeId v) noexcept {
    assert(v < capacity_);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_full() const noexcept { return count() == capacity_; }

  NodeSet& operator|=(const NodeSet& o) noexcept {
    assert(o.capacity_ == capacity_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  NodeSet& operator&=(const NodeSet& o) noexcept {
    assert(o.capacity_ == capacity_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  NodeSet& operator-=(const NodeSet& o) noexcept {
    assert(o.capacity_ == capacity_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

  bool intersects(const NodeSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool is_subset_of(const NodeSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

  // Members in increasing id order.
  std::vector<NodeId> members() const {
    std::vector<NodeId> out;
    out.reserve(count());
    for_each([&](NodeId v) { out.push_back(v); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int bit = std::countr_zero(w);
        f(static_cast<NodeId>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull ^ capacity_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

struct NodeSetHash {
  std::size_t operator()(const NodeSet& s) const noexcept { return s.hash(); }
};

}  // namespace honeybee
