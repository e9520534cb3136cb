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

#include "allocsv/coalition.h"

#include <algorithm>
#include <cstring>

namespace allocsv {

void Coalition::Allocate(int width) {
  width_ = width;
  num_words_ = (width + 63) / 64;
  inline_[0] = inline_[1] = 0;
  if (num_words_ > kInlineWords) {
    heap_ = std::make_unique<uint64_t[]>(num_words_);
    std::fill_n(heap_.get(), num_words_, 0);
  } else {
    heap_.reset();
  }
}

Coalition::Coalition(int width) { Allocate(width); }

Coalition::Coalition(const Coalition& other) {
  Allocate(other.width_);
  std::memcpy(data(), other.data(), sizeof(uint64_t) * num_words_);
}

Coalition::Coalition(Coalition&& other) noexcept
    : width_(other.width_),
      num_words_(other.num_words_),
      heap_(std::move(other.heap_)) {
  inline_[0] = other.inline_[0];
  inline_[1] = other.inline_[1];
  other.width_ = other.num_words_ = 0;
}

Coalition& Coalition::operator=(const Coalition& other) {
  if (this != &other) {
    if (num_words_ != other.num_words_) {
      Allocate(other.width_);
    }
    width_ = other.width_;
    std::memcpy(data(), other.data(), sizeof(uint64_t) * num_words_);
  }
  return *this;
}

Coalition& Coalition::operator=(Coalition&& other) noexcept {
  if (this != &other) {
    width_ = other.width_;
    num_words_ = other.num_words_;
    inline_[0] = other.inline_[0];
    inline_[1] = other.inline_[1];
    heap_ = std::move(other.heap_);
    other.width_ = other.num_words_ = 0;
  }
  return *this;
}

Coalition Coalition::FromMask(int width, uint64_t mask) {
  Coalition c(width);
  if (c.num_words_ > 0) {
    if (width < 64) mask &= (uint64_t{1} << width) - 1;
    c.data()[0] = mask;
  }
  return c;
}

Coalition Coalition::Full(int width) {
  Coalition c(width);
  uint64_t* w = c.data();
  for (int k = 0; k < c.num_words_; ++k) w[k] = ~uint64_t{0};
  if (width % 64 != 0) {
    w[c.num_words_ - 1] = (uint64_t{1} << (width % 64)) - 1;
  }
  return c;
}

Coalition Coalition::Of(int width, std::span<const int> members) {
  Coalition c(width);
  for (int i : members) c.Insert(i);
  return c;
}

void Coalition::Clear() { std::fill_n(data(), num_words_, 0); }

int Coalition::Size() const {
  int total = 0;
  const uint64_t* w = data();
  for (int k = 0; k < num_words_; ++k) total += std::popcount(w[k]);
  return total;
}

bool Coalition::Empty() const {
  const uint64_t* w = data();
  for (int k = 0; k < num_words_; ++k) {
    if (w[k] != 0) return false;
  }
  return true;
}

bool Coalition::Intersects(const Coalition& other) const {
  const uint64_t* a = data();
  const uint64_t* b = other.data();
  const int n = std::min(num_words_, other.num_words_);
  for (int k = 0; k < n; ++k) {
    if ((a[k] & b[k]) != 0) return true;
  }
  return false;
}

bool Coalition::IsSubsetOf(const Coalition& other) const {
  const uint64_t* a = data();
  const uint64_t* b = other.data();
  for (int k = 0; k < num_words_; ++k) {
    const uint64_t bk = k < other.num_words_ ? b[k] : 0;
    if ((a[k] & ~bk) != 0) return false;
  }
  return true;
}

int Coalition::First() const {
  const uint64_t* w = data();
  for (int k = 0; k < num_words_; ++k) {
    if (w[k] != 0) return k * 64 + std::countr_zero(w[k]);
  }
  return -1;
}

Coalition& Coalition::operator|=(const Coalition& other) {
  uint64_t* a = data();
  const uint64_t* b = other.data();
  const int n = std::min(num_words_, other.num_words_);
  for (int k = 0; k < n; ++k) a[k] |= b[k];
  return *this;
}

Coalition& Coalition::operator&=(const Coalition& other) {
  uint64_t* a = data();
  const uint64_t* b = other.data();
  for (int k = 0; k < num_words_; ++k) {
    a[k] &= k < other.num_words_ ? b[k] : 0;
  }
  return *this;
}

Coalition& Coalition::Subtract(const Coalition& other) {
  uint64_t* a = data();
  const uint64_t* b = other.data();
  const int n = std::min(num_words_, other.num_words_);
  for (int k = 0; k < n; ++k) a[k] &= ~b[k];
  return *this;
}

Coalition Coalition::With(int i) const {
  Coalition c(*this);
  c.Insert(i);
  return c;
}

Coalition Coalition::Without(int i) const {
  Coalition c(*this);
  c.Erase(i);
  return c;
}

Coalition Coalition::Complement() const {
  Coalition c = Full(width_);
  c.Subtract(*this);
  return c;
}

std::vector<int> Coalition::Members() const {
  std::vector<int> out;
  out.reserve(Size());
  ForEach([&](int i) { out.push_back(i); });
  return out;
}

size_t Coalition::Hash() const {
  // splitmix-style finalizer folded over the words.
  uint64_t h = 0x9e3779b97f4a7c15ull ^ uint64_t(width_);
  const uint64_t* w = data();
  for (int k = 0; k < num_words_; ++k) {
    uint64_t x = w[k] + 0x9e3779b97f4a7c15ull * uint64_t(k + 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<size_t>(h);
}

bool operator==(const Coalition& a, const Coalition& b) {
  if (a.width_ != b.width_) return false;
  return std::memcmp(a.data(), b.data(), sizeof(uint64_t) * a.num_words_) == 0;
}

}  // namespace allocsv
