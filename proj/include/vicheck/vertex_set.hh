#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace vicheck
{
    using Vertex = int;

    /// Fixed-universe bitset over the vertices [0, size). Value type; ordered
    /// and hashable so it can key maps.
    class VertexSet
    {
        private:
            int _size = 0;
            std::vector<std::uint64_t> _words;

            static constexpr auto word_count(int size) -> std::size_t
            {
                return (static_cast<std::size_t>(size) + 63) / 64;
            }

        public:
            VertexSet() = default;

            explicit VertexSet(int size) :
                _size(size),
                _words(word_count(size), 0)
            {
            }

            VertexSet(int size, std::initializer_list<Vertex> members) :
                VertexSet(size)
            {
                for (auto v : members)
                    set(v);
            }

            static auto full(int size) -> VertexSet
            {
                VertexSet result(size);
                for (Vertex v = 0 ; v < size ; ++v)
                    result.set(v);
                return result;
            }

            static auto from_members(int size, const std::vector<Vertex> & members) -> VertexSet
            {
                VertexSet result(size);
                for (auto v : members)
                    result.set(v);
                return result;
            }

            auto universe_size() const -> int { return _size; }

            auto test(Vertex v) const -> bool
            {
                return (_words[static_cast<std::size_t>(v) >> 6] >> (static_cast<unsigned>(v) & 63)) & 1u;
            }

            auto set(Vertex v) -> void
            {
                _words[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (static_cast<unsigned>(v) & 63);
            }

            auto reset(Vertex v) -> void
            {
                _words[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (static_cast<unsigned>(v) & 63));
            }

            auto assign(Vertex v, bool value) -> void
            {
                if (value)
                    set(v);
                else
                    reset(v);
            }

            auto clear() -> void
            {
                for (auto & w : _words)
                    w = 0;
            }

            auto count() const -> int
            {
                int result = 0;
                for (auto w : _words)
                    result += std::popcount(w);
                return result;
            }

            auto empty() const -> bool
            {
                for (auto w : _words)
                    if (w)
                        return false;
                return true;
            }

            auto intersection_count(const VertexSet & other) const -> int
            {
                int result = 0;
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    result += std::popcount(_words[i] & other._words[i]);
                return result;
            }

            auto intersects(const VertexSet & other) const -> bool
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    if (_words[i] & other._words[i])
                        return true;
                return false;
            }

            auto is_subset_of(const VertexSet & other) const -> bool
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    if (_words[i] & ~other._words[i])
                        return false;
                return true;
            }

            auto operator&=(const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            auto operator|=(const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            /// Removes every member of other.
            auto subtract(const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            auto complement() const -> VertexSet
            {
                VertexSet result(_size);
                for (Vertex v = 0 ; v < _size ; ++v)
                    if (! test(v))
                        result.set(v);
                return result;
            }

            /// Smallest member, or -1 when empty.
            auto first() const -> Vertex
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    if (_words[i])
                        return static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(_words[i])));
                return -1;
            }

            auto members() const -> std::vector<Vertex>
            {
                std::vector<Vertex> result;
                for (std::size_t i = 0 ; i < _words.size() ; ++i) {
                    auto w = _words[i];
                    while (w) {
                        result.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                        w &= w - 1;
                    }
                }
                return result;
            }

            template <typename Fn_>
            auto for_each(Fn_ && fn) const -> void
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i) {
                    auto w = _words[i];
                    while (w) {
                        fn(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                        w &= w - 1;
                    }
                }
            }

            auto words() const -> const std::vector<std::uint64_t> & { return _words; }

            friend auto operator&(VertexSet a, const VertexSet & b) -> VertexSet { a &= b; return a; }
            friend auto operator|(VertexSet a, const VertexSet & b) -> VertexSet { a |= b; return a; }

            friend auto operator==(const VertexSet & a, const VertexSet & b) -> bool = default;

            /// Orders first by universe size, then by members viewed as a
            /// little-endian binary number.
            friend auto operator<(const VertexSet & a, const VertexSet & b) -> bool
            {
                if (a._size != b._size)
                    return a._size < b._size;
                for (std::size_t i = a._words.size() ; i-- > 0 ; )
                    if (a._words[i] != b._words[i])
                        return a._words[i] < b._words[i];
                return false;
            }

            auto hash() const -> std::size_t
            {
                std::size_t seed = static_cast<std::size_t>(_size);
                for (auto w : _words)
                    seed ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
                return seed;
            }
    };

    /// One vertex subset per free set variable, in declaration order.
    using Assignment = std::vector<VertexSet>;
}

template <>
struct std::hash<vicheck::VertexSet>
{
    auto operator()(const vicheck::VertexSet & s) const -> std::size_t { return s.hash(); }
};
