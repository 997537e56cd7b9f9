#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cylkit {

/// A set of atom indices of a finite atomic BAO.
///
/// The universe (number of atoms of the frame) travels with the value, so
/// combining elements of different frames is detected and reported as a
/// FrameMismatch instead of producing garbage.
class Element {
public:
    Element() = default;
    explicit Element(std::size_t universe);

    static Element empty(std::size_t universe) { return Element(universe); }
    static Element full(std::size_t universe);
    static Element singleton(std::size_t universe, std::size_t atom);
    static Element from_atoms(std::size_t universe, std::span<const int> atoms);

    std::size_t universe() const noexcept { return universe_; }

    bool test(std::size_t atom) const;
    void set(std::size_t atom, bool value = true);
    void reset(std::size_t atom) { set(atom, false); }

    bool none() const noexcept;
    bool any() const noexcept { return !none(); }
    bool is_full() const noexcept;
    std::size_t count() const noexcept;

    bool is_subset_of(const Element& other) const;
    bool intersects(const Element& other) const;

    Element& operator|=(const Element& other);
    Element& operator&=(const Element& other);
    Element& operator-=(const Element& other);
    Element operator~() const;

    friend Element operator|(Element a, const Element& b) { return a |= b; }
    friend Element operator&(Element a, const Element& b) { return a &= b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }

    friend bool operator==(const Element&, const Element&) = default;
    friend std::strong_ordering operator<=>(const Element&, const Element&) = default;

    /// Smallest member at or after `from`.
    std::optional<std::size_t> next(std::size_t from = 0) const noexcept;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int bit = __builtin_ctzll(bits);
                f(static_cast<int>(w * 64 + static_cast<std::size_t>(bit)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<int> atoms() const;
    std::size_t hash() const noexcept;
    std::string to_string() const;

private:
    void require_same_universe(const Element& other) const;
    void clear_padding() noexcept;

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

} // namespace cylkit
