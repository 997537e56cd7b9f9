#pragma once

#include "cylkit/atom_structure.hpp"
#include "cylkit/element.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cylkit {

/// The complex algebra of a finite atom structure.
///
/// Every unary operator is normal and completely additive by construction:
/// it is evaluated as the union of the images of the atoms below its
/// argument. Values are immutable; copies share the frame and its caches.
class FiniteBAO {
public:
    /// Validates the frame (ValidationError on violation) and builds the
    /// per-operator image tables.
    explicit FiniteBAO(AtomStructure frame);

    const AtomStructure& frame() const noexcept { return impl_->frame; }
    const Signature& signature() const noexcept { return impl_->frame.signature; }
    std::size_t atom_count() const noexcept { return impl_->frame.atoms.size(); }
    const std::string& atom_label(int atom) const { return impl_->frame.atoms.at(static_cast<std::size_t>(atom)); }

    Element zero() const { return Element::empty(atom_count()); }
    Element one() const { return Element::full(atom_count()); }
    Element atom(int a) const { return Element::singleton(atom_count(), static_cast<std::size_t>(a)); }

    bool has_unary(std::string_view op) const;
    /// op(X) = {a : exists b in X, (a, b) in T_op}.
    Element apply(std::string_view op, const Element& x) const;
    /// Atoms below op({b}).
    std::span<const int> image(std::string_view op, int b) const;
    /// Atoms b with (a, b) in T_op.
    std::span<const int> witnesses(std::string_view op, int a) const;

    bool has_constant(std::string_view name) const;
    const Element& constant(std::string_view name) const;

    bool has_composition() const noexcept { return impl_->frame.has_composition; }
    bool consistent(int a, int b, int c) const { return impl_->frame.composition.consistent(a, b, c); }
    /// x ; y = {a : exists b <= x, c <= y with (a, b, c) consistent}.
    Element compose(const Element& x, const Element& y) const;
    /// Composition of two atoms (cached table).
    const Element& compose_atoms(int b, int c) const;

    /// FrameMismatch unless x is an element of this algebra.
    void require_member(const Element& x) const;

private:
    struct Table {
        std::vector<std::size_t> image_offsets;
        std::vector<int> image_data;
        std::vector<std::size_t> witness_offsets;
        std::vector<int> witness_data;
    };
    struct Impl {
        AtomStructure frame;
        std::vector<std::pair<std::string, Table>> ops; // sorted by name
        std::vector<std::pair<std::string, Element>> constants; // sorted by name
        std::vector<Element> composition; // b * n + c
    };

    const Table& table(std::string_view op) const;

    std::shared_ptr<const Impl> impl_;
};

/// complex_algebra(frame): the algebra of all atom subsets.
inline FiniteBAO complex_algebra(AtomStructure frame) { return FiniteBAO(std::move(frame)); }

/// Boolean product: atoms are the disjoint union, operators act componentwise.
/// Throws ValidationError on signature mismatch.
FiniteBAO product(const FiniteBAO& a, const FiniteBAO& b);

/// A subalgebra given by its atoms: a partition of the ambient atom set.
/// Its elements are exactly the unions of blocks.
struct Subalgebra {
    std::vector<Element> blocks; // ordered by smallest member

    std::size_t atom_count() const noexcept { return blocks.size(); }
    bool contains(const Element& x) const;
    /// Index of the block containing ambient atom a.
    int block_of(int a) const;
    /// All 2^blocks elements; CapExceeded when blocks > max_atoms.
    std::vector<Element> elements(std::size_t max_atoms = 20) const;
};

/// Least subalgebra containing the generators and all constants, closed under
/// every operation of the signature. Computed as the coarsest partition of
/// the atoms that every generator, constant and operator image respects.
Subalgebra generated_subalgebra(const FiniteBAO& algebra, std::span<const Element> generators);

/// The subalgebra as a FiniteBAO whose atoms are the blocks. Throws
/// ValidationError if the partition is not closed under the operations.
FiniteBAO materialize(const FiniteBAO& algebra, const Subalgebra& sub);

/// Label of a block: the atom's own label for a singleton, else "[first+k]".
std::string block_label(const FiniteBAO& algebra, const Element& block);

/// Indices of the blocks whose union is x; ValidationError (mentioning `what`)
/// if x cuts a block.
std::vector<int> decompose(const std::vector<Element>& blocks, const Element& x, const std::string& what);

/// Frame on the blocks of a partition with a chosen signature. Each pair in
/// unary_map/constant_map is (new name, source name).
AtomStructure block_frame(const FiniteBAO& algebra, const std::vector<Element>& blocks, const Signature& signature,
                          const std::vector<std::pair<std::string, std::string>>& unary_map,
                          const std::vector<std::pair<std::string, std::string>>& constant_map);

} // namespace cylkit
