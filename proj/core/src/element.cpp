#include "cylkit/element.hpp"

#include "cylkit/errors.hpp"

#include <bit>

namespace cylkit {

namespace {
std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }
} // namespace

Element::Element(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

Element Element::full(std::size_t universe)
{
    Element e(universe);
    for (auto& w : e.words_)
        w = ~std::uint64_t{0};
    e.clear_padding();
    return e;
}

Element Element::singleton(std::size_t universe, std::size_t atom)
{
    Element e(universe);
    e.set(atom);
    return e;
}

Element Element::from_atoms(std::size_t universe, std::span<const int> atoms)
{
    Element e(universe);
    for (int a : atoms)
        e.set(static_cast<std::size_t>(a));
    return e;
}

bool Element::test(std::size_t atom) const
{
    if (atom >= universe_)
        throw FrameMismatch("atom index " + std::to_string(atom) + " outside frame of " + std::to_string(universe_) +
                            " atoms");
    return (words_[atom / 64] >> (atom % 64)) & 1U;
}

void Element::set(std::size_t atom, bool value)
{
    if (atom >= universe_)
        throw FrameMismatch("atom index " + std::to_string(atom) + " outside frame of " + std::to_string(universe_) +
                            " atoms");
    const std::uint64_t mask = std::uint64_t{1} << (atom % 64);
    if (value)
        words_[atom / 64] |= mask;
    else
        words_[atom / 64] &= ~mask;
}

bool Element::none() const noexcept
{
    for (auto w : words_)
        if (w != 0)
            return false;
    return true;
}

bool Element::is_full() const noexcept { return count() == universe_; }

std::size_t Element::count() const noexcept
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool Element::is_subset_of(const Element& other) const
{
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & ~other.words_[i]) != 0)
            return false;
    return true;
}

bool Element::intersects(const Element& other) const
{
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & other.words_[i]) != 0)
            return true;
    return false;
}

Element& Element::operator|=(const Element& other)
{
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

Element& Element::operator&=(const Element& other)
{
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

Element& Element::operator-=(const Element& other)
{
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
    return *this;
}

Element Element::operator~() const
{
    Element e = *this;
    for (auto& w : e.words_)
        w = ~w;
    e.clear_padding();
    return e;
}

std::optional<std::size_t> Element::next(std::size_t from) const noexcept
{
    if (from >= universe_)
        return std::nullopt;
    std::size_t w = from / 64;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from % 64));
    while (true) {
        if (bits != 0)
            return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        if (++w >= words_.size())
            return std::nullopt;
        bits = words_[w];
    }
}

std::vector<int> Element::atoms() const
{
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int a) { out.push_back(a); });
    return out;
}

std::size_t Element::hash() const noexcept
{
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_)
        h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::string Element::to_string() const
{
    std::string s = "{";
    bool first = true;
    for_each([&](int a) {
        if (!first)
            s += ',';
        s += std::to_string(a);
        first = false;
    });
    return s + "}";
}

void Element::require_same_universe(const Element& other) const
{
    if (universe_ != other.universe_)
        throw FrameMismatch("elements from frames of " + std::to_string(universe_) + " and " +
                            std::to_string(other.universe_) + " atoms");
}

void Element::clear_padding() noexcept
{
    if (universe_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
}

} // namespace cylkit
