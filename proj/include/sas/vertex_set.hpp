/*
 * Copyright 2026 The sasgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sas/error.hpp"

namespace sas {

/**
 * A set of vertex ids drawn from a fixed universe [0, universe()).
 * Binary operators require equal universes.
 */
class VertexSet
{
  public:
    using Bits = boost::dynamic_bitset<std::uint64_t>;

    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : bits_(universe) { }
    VertexSet(std::size_t universe, std::initializer_list<VertexId> ids) : bits_(universe)
    {
        for (auto v : ids) insert(v);
    }

    static VertexSet full(std::size_t universe)
    {
        VertexSet s(universe);
        s.bits_.set();
        return s;
    }

    template <typename It>
    static VertexSet from_range(std::size_t universe, It first, It last)
    {
        VertexSet s(universe);
        for (; first != last; ++first) s.insert(static_cast<VertexId>(*first));
        return s;
    }

    static VertexSet from_vector(std::size_t universe, const std::vector<VertexId>& ids)
    {
        return from_range(universe, ids.begin(), ids.end());
    }

    std::size_t universe() const { return bits_.size(); }
    std::size_t count() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }
    bool any() const { return bits_.any(); }

    bool contains(VertexId v) const { return v < bits_.size() && bits_.test(v); }
    void insert(VertexId v) { bits_.set(v); }
    void erase(VertexId v) { bits_.reset(v); }
    void clear() { bits_.reset(); }

    VertexSet complement() const
    {
        VertexSet s(*this);
        s.bits_.flip();
        return s;
    }

    bool is_subset_of(const VertexSet& o) const { return bits_.is_subset_of(o.bits_); }
    bool intersects(const VertexSet& o) const { return bits_.intersects(o.bits_); }

    VertexSet& operator|=(const VertexSet& o) { bits_ |= o.bits_; return *this; }
    VertexSet& operator&=(const VertexSet& o) { bits_ &= o.bits_; return *this; }
    VertexSet& operator-=(const VertexSet& o) { bits_ -= o.bits_; return *this; }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }

    /** Smallest member, or kNoVertex. */
    VertexId first() const
    {
        auto p = bits_.find_first();
        return p == Bits::npos ? kNoVertex : static_cast<VertexId>(p);
    }

    class iterator
    {
      public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = VertexId;
        using difference_type = std::ptrdiff_t;
        using pointer = const VertexId*;
        using reference = VertexId;

        iterator() = default;
        iterator(const Bits* b, std::size_t pos) : b_(b), pos_(pos) { }
        VertexId operator*() const { return static_cast<VertexId>(pos_); }
        iterator& operator++()
        {
            pos_ = b_->find_next(pos_);
            return *this;
        }
        iterator operator++(int)
        {
            auto t = *this;
            ++*this;
            return t;
        }
        bool operator==(const iterator& o) const { return pos_ == o.pos_; }
        bool operator!=(const iterator& o) const { return pos_ != o.pos_; }

      private:
        const Bits* b_ = nullptr;
        std::size_t pos_ = Bits::npos;
    };

    iterator begin() const { return iterator(&bits_, bits_.find_first()); }
    iterator end() const { return iterator(&bits_, Bits::npos); }

    std::vector<VertexId> to_vector() const
    {
        std::vector<VertexId> out;
        out.reserve(count());
        for (auto v : *this) out.push_back(v);
        return out;
    }

    const Bits& bits() const { return bits_; }

  private:
    Bits bits_;
};

} // namespace sas
