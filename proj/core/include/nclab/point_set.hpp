#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nclab {

/// Points of the board are 1-indexed: a board of size n holds 1..n.
using Point = std::int64_t;

/// A subset of [n] stored as a dense bit array. Bit x-1 represents point x.
///
/// Binary operations require both operands to share the same board size.
class PointSet {
public:
    using Word = std::uint64_t;
    static constexpr int word_bits = 64;

    PointSet() = default;
    explicit PointSet(Point n);
    PointSet(Point n, std::initializer_list<Point> points);
    PointSet(Point n, std::span<const Point> points);

    static PointSet full(Point n);
    /// Points x in [lo, hi] (clipped to the board).
    static PointSet interval(Point n, Point lo, Point hi);

    Point board_size() const noexcept { return n_; }

    bool contains(Point x) const noexcept
    {
        if (x < 1 || x > n_)
            return false;
        auto i = static_cast<std::size_t>(x - 1);
        return (words_[i / word_bits] >> (i % word_bits)) & 1U;
    }

    void insert(Point x);
    void erase(Point x);

    std::size_t size() const noexcept;
    bool empty() const noexcept;

    std::optional<Point> min() const noexcept;
    std::optional<Point> max() const noexcept;

    /// { x - d : x in S, x - d >= 1 }, i.e. the translate S - d restricted to the board.
    PointSet shifted_down(Point d) const;
    /// { x + d : x in S, x + d <= n }.
    PointSet shifted_up(Point d) const;

    /// |S ∩ (S - d)|: the number of pairs in S at distance d.
    std::size_t pairs_at_distance(Point d) const;

    bool is_subset_of(const PointSet & other) const;
    bool intersects(const PointSet & other) const;

    PointSet & operator&=(const PointSet & other);
    PointSet & operator|=(const PointSet & other);
    /// Set difference.
    PointSet & operator-=(const PointSet & other);

    friend PointSet operator&(PointSet a, const PointSet & b) { return a &= b; }
    friend PointSet operator|(PointSet a, const PointSet & b) { return a |= b; }
    friend PointSet operator-(PointSet a, const PointSet & b) { return a -= b; }

    bool operator==(const PointSet & other) const = default;

    std::vector<Point> points() const;

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word bits = words_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                f(static_cast<Point>(w * word_bits + b + 1));
                bits &= bits - 1;
            }
        }
    }

    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> mutable_words() noexcept { return words_; }

    /// Human-readable form, e.g. "{1,3,5}".
    std::string to_string() const;

private:
    void check_same_board(const PointSet & other) const;
    void clear_tail() noexcept;

    Point n_ = 0;
    std::vector<Word> words_;
};

} // namespace nclab
