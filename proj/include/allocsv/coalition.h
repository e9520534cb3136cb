// Copyright 2026 The allocsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALLOCSV_COALITION_H_
#define ALLOCSV_COALITION_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace allocsv {

// A subset of the agents of a scenario, stored as a bitset over the
// canonical agent indices. Widths up to 128 agents live inline; wider
// coalitions spill to the heap.
class Coalition {
 public:
  static constexpr int kInlineWords = 2;

  Coalition() = default;
  explicit Coalition(int width);
  Coalition(const Coalition& other);
  Coalition(Coalition&& other) noexcept;
  Coalition& operator=(const Coalition& other);
  Coalition& operator=(Coalition&& other) noexcept;
  ~Coalition() = default;

  static Coalition FromMask(int width, uint64_t mask);
  static Coalition Full(int width);
  static Coalition Of(int width, std::span<const int> members);

  int width() const { return width_; }
  int num_words() const { return num_words_; }

  bool Contains(int i) const {
    return (data()[i >> 6] >> (i & 63)) & 1u;
  }
  void Insert(int i) { data()[i >> 6] |= uint64_t{1} << (i & 63); }
  void Erase(int i) { data()[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  void Clear();

  int Size() const;
  bool Empty() const;
  bool Intersects(const Coalition& other) const;
  bool IsSubsetOf(const Coalition& other) const;
  // Lowest member index, or -1 when empty.
  int First() const;

  Coalition& operator|=(const Coalition& other);
  Coalition& operator&=(const Coalition& other);
  // Removes every member of `other`.
  Coalition& Subtract(const Coalition& other);
  Coalition With(int i) const;
  Coalition Without(int i) const;
  Coalition Complement() const;

  std::vector<int> Members() const;

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    const uint64_t* w = data();
    for (int k = 0; k < num_words_; ++k) {
      uint64_t bits = w[k];
      while (bits != 0) {
        fn(k * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  // Low 64 bits; the whole coalition when width() <= 64.
  uint64_t Mask() const { return num_words_ == 0 ? 0 : data()[0]; }
  std::span<const uint64_t> words() const { return {data(), size_t(num_words_)}; }
  uint64_t* mutable_words() { return data(); }

  size_t Hash() const;

  friend bool operator==(const Coalition& a, const Coalition& b);

 private:
  uint64_t* data() { return heap_ ? heap_.get() : inline_; }
  const uint64_t* data() const { return heap_ ? heap_.get() : inline_; }
  void Allocate(int width);

  int width_ = 0;
  int num_words_ = 0;
  uint64_t inline_[kInlineWords] = {0, 0};
  std::unique_ptr<uint64_t[]> heap_;
};

struct CoalitionHash {
  size_t operator()(const Coalition& c) const { return c.Hash(); }
};

}  // namespace allocsv

#endif  // ALLOCSV_COALITION_H_
