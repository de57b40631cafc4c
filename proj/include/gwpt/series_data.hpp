#pragma once

#include "gwpt/pt_algebra.hpp"
#include "gwpt/qrational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwpt {

// Entry n of each vector stands for ch_{n+2} of that class.
struct SeriesKey {
    std::vector<int> pt, L, H, one;
    auto operator<=>(const SeriesKey&) const = default;
    std::string str() const;  // "[1],[0],[],[]"
};

struct SeriesTable {
    std::map<SeriesKey, QRational> rows;
    std::string variety = "p3";
    std::string beta = "L";
    std::string source;
};

class MissingKey : public std::runtime_error {
public:
    explicit MissingKey(const SeriesKey& k)
        : std::runtime_error("no series for key " + k.str()), key(k) {}
    SeriesKey key;
};

// one JSON object per line: {"pt":[..],"L":[..],"H":[..],"one":[..],"num":[..],"den":[..]}
SeriesTable parse_table(const std::string& text, const std::string& source = "<memory>");
SeriesTable load_table(const std::string& path);
std::string default_table_path();

// hex SHA-256 of a file, and the comparison against "<path>.sha256"
std::string file_sha256(const std::string& path);
bool checksum_matches(const std::string& path);

// key of a ch-monomial over the P3 preset; nullopt if some factor has no table encoding
std::optional<SeriesKey> key_of(const RingPtr& p3, const PtMonomial& m);
PtElement key_element(const RingPtr& p3, const SeriesKey& k);

// <D>_beta by table lookup after bracket normalization; throws MissingKey
QRational evaluate_bracket(const PtElement& D, const SeriesTable& table, const CurveClass& beta);
// first missing key of D, if any
std::optional<SeriesKey> coverage_miss(const PtElement& D, const SeriesTable& table, const CurveClass& beta);

// <Lcal_k(D)>_beta
QRational verify_virasoro_relation(int k, const PtElement& D, const SeriesTable& table, const CurveClass& beta);

struct SymmetryRecord {
    SeriesKey key;
    std::optional<std::pair<int, int>> eps_a;
};
std::vector<SymmetryRecord> functional_symmetry_scan(const SeriesTable& table);

}  // namespace gwpt
