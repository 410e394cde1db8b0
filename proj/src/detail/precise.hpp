#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "graphon_ldp/graph.hpp"
#include "graphon_ldp/graphon.hpp"

namespace gldp::detail {

// 50 significant digits: enough to resolve witness gaps of order eps^3 for
// eps down to 2^-40.
using Precise = boost::multiprecision::cpp_bin_float_50;

Precise to_precise(const Rational& q);
Precise precise_hom_density(const FiniteGraph& H, const StepGraphon& f);
// Throws DomainError when f leaves the support class of W0.
Precise precise_entropy(const StepGraphon& W0, const StepGraphon& f);
Precise precise_operator_norm(const StepGraphon& f);

}  // namespace gldp::detail
