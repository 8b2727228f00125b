#pragma once

// JSON / CSV emission. Every Real is emitted as a decimal string (values
// carry far more than the 15-ish significant digits plain JSON numbers
// survive); the digit count follows the working precision. Reports use
// insertion-ordered JSON so a fixed configuration produces bit-identical
// output.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcs/functional.hpp"
#include "gcs/precision.hpp"
#include "gcs/real.hpp"
#include "gcs/verify.hpp"

namespace gcs {

using Json = nlohmann::ordered_json;

inline int output_digits(long working_bits) {
    int d = static_cast<int>(working_bits * 3 / 10) - 10;
    return d < 6 ? 6 : d;
}

inline std::string real_str(const Real& v, int digits) { return v.to_string(digits); }

inline Json params_json(const Params& p, int digits) {
    return Json{{"b", real_str(p.b, digits)},
                {"z", real_str(p.z, digits)},
                {"lambda", real_str(p.lambda, digits)}};
}

inline Json check_json(const CheckResult& c, int digits) {
    Json j{{"name", c.name},
           {"value", real_str(c.value, digits)},
           {"target", real_str(c.target, digits)},
           {"tolerance", real_str(c.tolerance, digits)},
           {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline Json report_json(const Params& params, const PrecisionPolicy& policy,
                        const std::vector<CheckResult>& checks, Json tables) {
    const int digits = output_digits(policy.working_bits);
    Json j;
    j["params"] = params_json(params, digits);
    j["precision_bits"] = policy.working_bits;
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(check_json(c, digits));
    j["checks"] = std::move(arr);
    j["tables"] = std::move(tables);
    return j;
}

// RFC-4180 CSV: header row, CRLF record separators, quoting only when needed.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os_ << ',';
            write_field(fields[i]);
        }
        os_ << "\r\n";
    }

private:
    void write_field(const std::string& f) {
        if (f.find_first_of(",\"\r\n") == std::string::npos) {
            os_ << f;
            return;
        }
        os_ << '"';
        for (char ch : f) {
            if (ch == '"') os_ << '"';
            os_ << ch;
        }
        os_ << '"';
    }

    std::ostream& os_;
};

}  // namespace gcs
