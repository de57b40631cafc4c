#include "gwpt/series_data.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gwpt {

namespace {

std::string vec_str(const std::vector<int>& v)
{
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::vector<int> int_list(const nlohmann::json& j, const char* field, int line)
{
    if (!j.contains(field)) return {};
    const auto& a = j.at(field);
    if (!a.is_array()) throw std::runtime_error("line " + std::to_string(line) + ": field " + field + " is not a list");
    std::vector<int> out;
    for (const auto& x : a) {
        if (!x.is_number_integer() || x.get<long>() < 0)
            throw std::runtime_error("line " + std::to_string(line) + ": bad entry in " + field);
        out.push_back(x.get<int>());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Poly coeff_poly(const nlohmann::json& j, const char* field, int line)
{
    if (!j.contains(field) || !j.at(field).is_array() || j.at(field).empty())
        throw std::runtime_error("line " + std::to_string(line) + ": missing coefficient list " + field);
    std::vector<Rational> c;
    for (const auto& x : j.at(field)) {
        if (x.is_number_integer()) c.emplace_back(x.get<long>());
        else if (x.is_string()) c.push_back(parse_rational(x.get<std::string>()));
        else throw std::runtime_error("line " + std::to_string(line) + ": bad coefficient in " + field);
    }
    return Poly(std::move(c));
}

}  // namespace

std::string SeriesKey::str() const
{
    return vec_str(pt) + "," + vec_str(L) + "," + vec_str(H) + "," + vec_str(one);
}

SeriesTable parse_table(const std::string& text, const std::string& source)
{
    SeriesTable t;
    t.source = source;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("line " + std::to_string(n) + ": malformed JSON: " + e.what());
        }
        if (!j.is_object()) throw std::runtime_error("line " + std::to_string(n) + ": not an object");
        SeriesKey k{int_list(j, "pt", n), int_list(j, "L", n), int_list(j, "H", n), int_list(j, "one", n)};
        Poly num = coeff_poly(j, "num", n), den = coeff_poly(j, "den", n);
        if (den.is_zero()) throw std::runtime_error("line " + std::to_string(n) + ": zero denominator");
        if (!t.rows.emplace(k, QRational(num, den)).second)
            throw std::runtime_error("line " + std::to_string(n) + ": duplicate key " + k.str());
    }
    return t;
}

SeriesTable load_table(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open table " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_table(ss.str(), path);
}

std::string default_table_path()
{
    return std::string(GWPT_DATA_DIR) + "/p3_deg1.jsonl";
}

std::string file_sha256(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string data = ss.str();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

bool checksum_matches(const std::string& path)
{
    std::ifstream f(path + ".sha256");
    std::string want;
    if (!(f >> want)) return false;
    return want == file_sha256(path);
}

std::optional<SeriesKey> key_of(const RingPtr& R, const PtMonomial& m)
{
    SeriesKey k;
    for (const auto& g : m) {
        if (g.formal() || g.k < 2) return std::nullopt;
        const std::string& lab = R->label(g.b);
        std::vector<int>* v = lab == "p" ? &k.pt : lab == "L" ? &k.L : lab == "H" ? &k.H : lab == "one" ? &k.one : nullptr;
        if (!v) return std::nullopt;
        v->push_back(g.k - 2);
    }
    for (auto* v : {&k.pt, &k.L, &k.H, &k.one}) std::sort(v->begin(), v->end());
    return k;
}

PtElement key_element(const RingPtr& R, const SeriesKey& k)
{
    PtElement e = PtElement::one(R);
    auto put = [&](const std::vector<int>& v, const char* lab) {
        for (int n : v) e = e * PtElement::basis_gen(R, PtBasis::ch, n + 2, R->index(lab));
    };
    put(k.pt, "p");
    put(k.L, "L");
    put(k.H, "H");
    put(k.one, "one");
    return e;
}

std::optional<SeriesKey> coverage_miss(const PtElement& D, const SeriesTable& table, const CurveClass& beta)
{
    const PtElement N = bracket_normalize(D, beta);
    for (const auto& [m, c] : N.terms()) {
        auto k = key_of(N.ring(), m);
        if (!k) return SeriesKey{{-1}, {}, {}, {}};
        if (!table.rows.count(*k)) return k;
    }
    return std::nullopt;
}

QRational evaluate_bracket(const PtElement& D, const SeriesTable& table, const CurveClass& beta)
{
    const PtElement N = bracket_normalize(D, beta);
    QRational sum;
    for (const auto& [m, c] : N.terms()) {
        auto k = key_of(N.ring(), m);
        if (!k) throw std::invalid_argument("monomial " + monomial_str(N.ring(), PtBasis::ch, m) + " has no table encoding");
        auto it = table.rows.find(*k);
        if (it == table.rows.end()) throw MissingKey(*k);
        sum += it->second * QRational(c);
    }
    return sum;
}

QRational verify_virasoro_relation(int k, const PtElement& D, const SeriesTable& table, const CurveClass& beta)
{
    return evaluate_bracket(apply_virasoro(k, to_ch(D), VirasoroKind::Lcal), table, beta);
}

std::vector<SymmetryRecord> functional_symmetry_scan(const SeriesTable& table)
{
    std::vector<SymmetryRecord> out;
    for (const auto& [k, f] : table.rows) out.push_back({k, f.functional_symmetry()});
    return out;
}

}  // namespace gwpt
