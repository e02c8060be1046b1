#pragma once

#include <json.hpp>

#include "leff/contagion.hpp"
#include "leff/dynamical.hpp"
#include "leff/galois.hpp"
#include "leff/order.hpp"

namespace leff {

using Json = nlohmann::json;

// Schemas are documented in docs/formats.md. Parse failures throw
// validation_error with kind "ParseError" or "SchemaError".

Json poset_to_json(const FinitePreorder& p);
PreorderPtr preorder_from_json(const Json& j);
PosetPtr poset_from_json(const Json& j);

// Element references: label strings for explicit carriers, sorted label
// arrays (or a rendered subset label) for powerset carriers.
Json element_to_json(const FinitePreorder& p, int x);
int element_from_json(const FinitePreorder& p, const Json& j);

Mask mask_from_json(const Json& j, const std::vector<std::string>& ground);
Json mask_to_json(Mask m, const std::vector<std::string>& ground);

MonotoneMap map_from_json(const Json& j);

// Self-maps: {"carrier": <poset>, "map": [[from, to], ...]}. The closure /
// kernel axioms are checked by the caller's choice of validator.
ClosureOperator closure_from_json(const Json& j);
KernelOperator kernel_from_json(const Json& j);
Json closure_to_json(const ClosureOperator& c);

Description description_from_json(const Json& j);
Json description_to_json(const Description& d);

TimedDescription timed_description_from_json(const Json& j);
Json timed_description_to_json(const TimedDescription& td);

// Stock veil descriptors ({"type": ...}) or a bare monotone-map object.
Veil veil_from_json(const Json& j);

Json witness_to_json(const Veil& v, const EffectWitness& w);

Json error_to_json(const validation_error& e);

Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);

}  // namespace leff
