#pragma once

#include "cylkit/bao.hpp"
#include "cylkit/schema.hpp"
#include "cylkit/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cylkit {

/// How to read the displayed quasi-projection terms.
///   standard: q^;q <= 1', xi_i = pi_i ; pi_i^, d_ij = 1 ; ((pi_i ; pi_j^) . 1')
///   verbatim: q;q <= 1,   xi_i = pi_i ; pi_i,  d_ij = 1 ; (pi_i . pi_j)
enum class QraReading { Standard, Verbatim };

struct QuasiprojectionCheck {
    bool holds = true;
    std::string failing; // "p^;p <= 1'", "q^;q <= 1'" (or "q;q <= 1"), "p^;q = 1"
};

/// Checks p^;p <= 1', q^;q <= 1' and p^;q = 1 in a relation algebra.
QuasiprojectionCheck check_quasiprojections(const FiniteBAO& b, const Element& p, const Element& q,
                                            QraReading reading = QraReading::Standard);

/// x^k with x^0 = 1' and x^(k+1) = x^k ; x.
TermPtr power(const TermPtr& x, int k);
/// dom x = 1' ; (x ; x^) and ran x = 1' ; (x^ ; x), as displayed.
TermPtr dom(const TermPtr& x);
TermPtr ran(const TermPtr& x);

/// The named terms for dimension n >= 2 over the variables p, q (and x for
/// c_i, suc, pred, dom, ran): eps, pi<i>, xi<i>, t<i>, t, c<i>, d<ij>, 1n,
/// dom, ran, suc, pred.
std::map<std::string, TermPtr> qra_terms(int n, QraReading reading = QraReading::Standard);

struct BnResult {
    std::vector<Element> elements; // B_n = {x : x = 1;x;t}
    std::vector<Element> atoms; // minimal nonzero members
    Element unit; // 1^(n)
    bool closed = false;
    std::string failure;
    std::optional<FiniteBAO> algebra; // CA_n signature, when closed
    std::optional<VarietyReport> equations; // CA_n axioms, exhaustive
};

/// Computes B_n by evaluating the terms over every element (at most 16 atoms),
/// checks closure under +, ., complement relative to 1^(n), c_i and d_ij, and
/// checks the CA_n axioms on the resulting algebra. ValidationError unless
/// p, q are quasi-projections.
BnResult build_Bn(const FiniteBAO& b, const Element& p, const Element& q, int n,
                  QraReading reading = QraReading::Standard);

struct InversionCheck {
    bool holds = true;
    std::size_t checked = 0;
    std::optional<Element> counterexample;
};

/// suc(pred x) = x and pred(suc x) = x for every x in B_n with c_0 x = x.
InversionCheck check_suc_pred(const FiniteBAO& b, const Element& p, const Element& q, int n,
                              QraReading reading = QraReading::Standard);

/// The one-atom relation algebra with 1 = 1'.
FiniteBAO trivial_qra();

} // namespace cylkit
