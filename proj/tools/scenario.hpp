// Scenario files: parsing, validation and the normalized echo written into reports.
#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace hktool {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolkitVersion = "0.1.0";

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CoeffKind { None, TrivialQ, TrivialFp, HighestWeight };

struct Scenario {
    std::string command;
    char series = 'A';
    int rank = 1;
    std::uint32_t p = 0;  // 0 when the command takes no prime
    CoeffKind coeff = CoeffKind::None;
    std::vector<int> mu;
    std::vector<int> subset;  // 1-based indices into nabla; empty = all
    std::vector<int> order;   // 1-based enumeration of nabla; empty = Bourbaki
    int radius = 3;
    int max_coord = 2;
    int m = 2;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    std::uint64_t budget_seconds = 600;
    std::string expect;  // empty = command default
    bool inheritance = false;
    bool zeta_non_coboundary = false;
    bool p3_sampling = false;
    bool svg = false;

    int n() const { return rank + 1; }
};

const std::vector<std::string>& known_commands();
std::vector<std::string> verdicts_for(const std::string& command);
std::string default_expect(const std::string& command);

// Throws SchemaError on any violation.
Scenario parse_scenario(const nlohmann::json& j, const std::string& command);
nlohmann::json scenario_echo(const Scenario& s);

// Report integers are base-10 strings.
template <class T>
std::string num(T v)
{
    static_assert(std::is_integral_v<T>);
    return std::to_string(v);
}

}  // namespace hktool
