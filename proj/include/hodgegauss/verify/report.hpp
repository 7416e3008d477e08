#pragma once

#include <chrono>
#include <complex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hodgegauss/exact/gaussian_rational.hpp"

namespace hodgegauss::verify {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

enum class Status { pass, fail, inconclusive };

inline const char* to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "PASS";
    case Status::fail:
        return "FAIL";
    default:
        return "INCONCLUSIVE";
    }
}

// Exit code convention shared with the CLI.
inline int exit_code(Status s)
{
    switch (s) {
    case Status::pass:
        return 0;
    case Status::fail:
        return 2;
    default:
        return 3;
    }
}

inline Status combine(Status a, Status b)
{
    if (a == Status::fail || b == Status::fail)
        return Status::fail;
    if (a == Status::inconclusive || b == Status::inconclusive)
        return Status::inconclusive;
    return Status::pass;
}

inline json to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }
inline json to_json(const exact::GaussianRational& g) { return g.str(); }

template <class S>
json to_json(const std::vector<S>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

// One row of the aggregate table: ratio or residual per (Q, P, N) cell.
struct TableRow {
    std::string check;
    std::string backend;
    int d = 0;
    int N = 0;
    int q_index = -1;
    std::string point;
    std::string quantity;
    std::string value;
};

struct VerificationReport {
    std::string check;
    std::string backend;
    json fixture = json::object();
    json measured = json::object();
    Status status = Status::inconclusive;
    std::vector<std::string> notes;
    std::vector<TableRow> rows;
    double wall_seconds = 0.0;

    json to_json(bool with_time = false) const
    {
        json j;
        j["schema_version"] = schema_version;
        j["check"] = check;
        j["backend"] = backend;
        j["status"] = verify::to_string(status);
        j["fixture"] = fixture;
        j["measured"] = measured;
        j["notes"] = notes;
        if (with_time)
            j["wall_seconds"] = wall_seconds;
        return j;
    }
};

// Runs f() and stores the elapsed time on the returned report.
template <class F>
VerificationReport timed(F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = f();
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// RFC 4180: fields with comma, quote, CR or LF are quoted; quotes are doubled.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports)
{
    os << "check,backend,d,N,q_index,point,quantity,value\r\n";
    for (const auto& r : reports)
        for (const auto& row : r.rows)
            os << csv_field(row.check) << ',' << csv_field(row.backend) << ',' << row.d << ',' << row.N << ','
               << row.q_index << ',' << csv_field(row.point) << ',' << csv_field(row.quantity) << ','
               << csv_field(row.value) << "\r\n";
}

inline std::string format_double(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

inline std::string format_complex(const std::complex<double>& z)
{
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

} // namespace hodgegauss::verify
