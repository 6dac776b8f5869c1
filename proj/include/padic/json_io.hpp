#pragma once

#include <json.hpp>

#include "padic/cohomology.hpp"
#include "padic/correspondence.hpp"
#include "padic/hitchin.hpp"

namespace padic {

// Insertion-ordered documents keep reports byte-deterministic.
using Json = nlohmann::ordered_json;

// All integers that can exceed 64 bits travel as exact decimal strings.
Json ctx_to_json(const CtxPtr& ctx);
CtxPtr ctx_from_json(const Json& j, std::optional<long> guard_override = std::nullopt);

Json scalar_to_json(const Scalar& s);          // {"p","m","N","coeffs":[...]}
Json scalar_coeffs_json(const Scalar& s);      // bare coefficient array
Scalar scalar_from_json(const Json& j, const CtxPtr& ctx);  // array/string/object forms

Json ring_element_to_json(const RingElement& e);
RingElement ring_element_from_json(const Json& j, const CtxPtr& ctx, long vars, long box);

Json scalar_matrix_to_json(const ScalarMatrix& m);
ScalarMatrix scalar_matrix_from_json(const Json& j, const CtxPtr& ctx);

Json laurent_matrix_to_json(const LaurentMatrix& m);
LaurentMatrix laurent_matrix_from_json(const Json& j, const CtxPtr& ctx, long vars, long box);

Json rep_to_json(const ScalarRep& rho);
ScalarRep rep_from_json(const Json& j, const CtxPtr& ctx);

Json laurent_rep_to_json(const LaurentRep& rho);

Json higgs_to_json(const ScalarHiggs& theta);
ScalarHiggs higgs_from_json(const Json& j, const CtxPtr& ctx);

Json hitchin_to_json(const HitchinPoint& h);
HitchinPoint hitchin_from_json(const Json& j, const CtxPtr& ctx);

Json cohomology_report_to_json(const CohomologyReport& rep, long n_prec);

Json cocycle_to_json(const TwistedCocycle& c);
TwistedCocycle cocycle_from_json(const Json& j, const CtxPtr& ctx);

}  // namespace padic
