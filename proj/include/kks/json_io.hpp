#pragma once

// JSON encodings shared by the command-line tool and the verification reports.

#include <json.hpp>

#include "kks/affine_core.hpp"
#include "kks/kcode.hpp"
#include "kks/order_lab.hpp"
#include "kks/shapes.hpp"
#include "kks/symfunc.hpp"

namespace kks {

nlohmann::json to_json(const AffinePermutation& w);
nlohmann::json to_json(const IndexSet& a);
nlohmann::json to_json(const KBoundedPartition& lambda);
nlohmann::json to_json(const CorePartition& core);
nlohmann::json to_json(const KCode& code);
nlohmann::json to_json(const WeakStrip& strip);
nlohmann::json to_json(const SymElt& f);
nlohmann::json to_json(const StrongSumCombination& f);
nlohmann::json to_json(const ZSets& z);
nlohmann::json to_json(const Fiber& f);

/// Bare member list of an index set, e.g. [1,3].
nlohmann::json members_json(const IndexSet& a);

}  // namespace kks
