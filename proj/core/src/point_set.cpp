#include <nclab/point_set.hpp>

#include <nclab/errors.hpp>

#include <algorithm>
#include <sstream>

namespace nclab {

namespace {
    std::size_t word_count(Point n) { return static_cast<std::size_t>((n + PointSet::word_bits - 1) / PointSet::word_bits); }
}

PointSet::PointSet(Point n) :
    n_(n)
{
    if (n < 0)
        throw OutOfRange("board size must be nonnegative, got " + std::to_string(n));
    words_.assign(word_count(n), 0);
}

PointSet::PointSet(Point n, std::initializer_list<Point> points) :
    PointSet(n, std::span<const Point>(points.begin(), points.size()))
{
}

PointSet::PointSet(Point n, std::span<const Point> points) :
    PointSet(n)
{
    for (Point x : points)
        insert(x);
}

PointSet PointSet::full(Point n)
{
    PointSet s(n);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.clear_tail();
    return s;
}

PointSet PointSet::interval(Point n, Point lo, Point hi)
{
    PointSet s(n);
    for (Point x = std::max<Point>(lo, 1); x <= std::min(hi, n); ++x)
        s.insert(x);
    return s;
}

void PointSet::insert(Point x)
{
    if (x < 1 || x > n_)
        throw OutOfRange("point " + std::to_string(x) + " outside [1, " + std::to_string(n_) + "]");
    auto i = static_cast<std::size_t>(x - 1);
    words_[i / word_bits] |= Word{1} << (i % word_bits);
}

void PointSet::erase(Point x)
{
    if (x < 1 || x > n_)
        return;
    auto i = static_cast<std::size_t>(x - 1);
    words_[i / word_bits] &= ~(Word{1} << (i % word_bits));
}

std::size_t PointSet::size() const noexcept
{
    std::size_t c = 0;
    for (Word w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool PointSet::empty() const noexcept
{
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::optional<Point> PointSet::min() const noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return static_cast<Point>(w * word_bits + std::countr_zero(words_[w]) + 1);
    return std::nullopt;
}

std::optional<Point> PointSet::max() const noexcept
{
    for (std::size_t w = words_.size(); w-- > 0;)
        if (words_[w])
            return static_cast<Point>(w * word_bits + (word_bits - 1 - std::countl_zero(words_[w])) + 1);
    return std::nullopt;
}

PointSet PointSet::shifted_down(Point d) const
{
    PointSet out(n_);
    if (d < 0)
        return shifted_up(-d);
    if (d >= n_)
        return out;
    auto q = static_cast<std::size_t>(d / word_bits);
    auto r = static_cast<unsigned>(d % word_bits);
    const std::size_t nw = words_.size();
    for (std::size_t i = 0; i + q < nw; ++i) {
        Word lo = words_[i + q] >> r;
        Word hi = (r != 0 && i + q + 1 < nw) ? words_[i + q + 1] << (word_bits - r) : 0;
        out.words_[i] = lo | hi;
    }
    out.clear_tail();
    return out;
}

PointSet PointSet::shifted_up(Point d) const
{
    PointSet out(n_);
    if (d < 0)
        return shifted_down(-d);
    if (d >= n_)
        return out;
    auto q = static_cast<std::size_t>(d / word_bits);
    auto r = static_cast<unsigned>(d % word_bits);
    const std::size_t nw = words_.size();
    for (std::size_t i = nw; i-- > q;) {
        Word lo = words_[i - q] << r;
        Word hi = (r != 0 && i >= q + 1) ? words_[i - q - 1] >> (word_bits - r) : 0;
        out.words_[i] = lo | hi;
    }
    out.clear_tail();
    return out;
}

std::size_t PointSet::pairs_at_distance(Point d) const
{
    if (d <= 0 || d >= n_)
        return 0;
    auto q = static_cast<std::size_t>(d / word_bits);
    auto r = static_cast<unsigned>(d % word_bits);
    const std::size_t nw = words_.size();
    std::size_t c = 0;
    for (std::size_t i = 0; i + q < nw; ++i) {
        Word lo = words_[i + q] >> r;
        Word hi = (r != 0 && i + q + 1 < nw) ? words_[i + q + 1] << (word_bits - r) : 0;
        c += static_cast<std::size_t>(std::popcount(words_[i] & (lo | hi)));
    }
    return c;
}

bool PointSet::is_subset_of(const PointSet & other) const
{
    check_same_board(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

bool PointSet::intersects(const PointSet & other) const
{
    check_same_board(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

PointSet & PointSet::operator&=(const PointSet & other)
{
    check_same_board(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

PointSet & PointSet::operator|=(const PointSet & other)
{
    check_same_board(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

PointSet & PointSet::operator-=(const PointSet & other)
{
    check_same_board(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
    return *this;
}

std::vector<Point> PointSet::points() const
{
    std::vector<Point> out;
    out.reserve(size());
    for_each([&](Point x) { out.push_back(x); });
    return out;
}

std::string PointSet::to_string() const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each([&](Point x) {
        if (!first)
            os << ',';
        os << x;
        first = false;
    });
    os << '}';
    return os.str();
}

void PointSet::check_same_board(const PointSet & other) const
{
    if (other.n_ != n_)
        throw OutOfRange("board size mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
}

void PointSet::clear_tail() noexcept
{
    auto tail = static_cast<unsigned>(n_ % word_bits);
    if (tail != 0 && !words_.empty())
        words_.back() &= (Word{1} << tail) - 1;
}

} // namespace nclab
