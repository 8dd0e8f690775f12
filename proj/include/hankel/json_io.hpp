#pragma once

// JSON representations:
//   GeneratingVector  [v0, ..., v12]
//   QuarticForm       {"4000": c, "3100": c, ...}
//   GramMatrix        10 rows of 10 numbers
//   Certificate       {"P": [v2, v6, v1, v3, v5], "M": m,
//                      "squares": [{"weight": w, "form": [10 numbers]}, ...],
//                      "minimizer": [x1, x2, x3, x4]}

#include <json.hpp>

#include "hankel/certificates.hpp"
#include "hankel/conditions.hpp"
#include "hankel/core.hpp"
#include "hankel/psd_bound.hpp"
#include "hankel/sos_bound.hpp"

namespace hankel {

using Json = nlohmann::json;

Json to_json(const GeneratingVector& v);
Json to_json(const QuarticForm& q);
Json to_json(const Vec4& x);
Json to_json(const SlicePoint& p);
Json to_json(const ConditionReport& r);
Json to_json(const DegenerateClass& d);
Json to_json(const BoundResult& b);
Json to_json(const GramMatrix& g);
Json to_json(const FeasResult& f);
Json to_json(const CriticalCertificate& c);
Json to_json(const VerificationReport& r);

// Parsers throw std::invalid_argument with a description of the first
// schema violation.
GeneratingVector generating_vector_from_json(const Json& j);
QuarticForm quartic_from_json(const Json& j);
GramMatrix gram_from_json(const Json& j);
CriticalCertificate certificate_from_json(const Json& j);

}  // namespace hankel
