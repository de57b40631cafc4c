#include "gwpt/combinatorics.hpp"

#include <map>

namespace gwpt {

namespace {

void parts_rec(int n, int len, int max_part, IntPartition& cur, std::vector<IntPartition>& out)
{
    if (len == 0) {
        if (n == 0) out.push_back(cur);
        return;
    }
    for (int p = std::min(n - (len - 1), max_part); p >= 1; --p) {
        if (p * len < n) break;
        cur.push_back(p);
        parts_rec(n - p, len - 1, p, cur, out);
        cur.pop_back();
    }
}

void setpart_rec(int i, int m, SetPartition& cur, std::vector<SetPartition>& out)
{
    if (i == m) {
        out.push_back(cur);
        return;
    }
    for (size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(i);
        setpart_rec(i + 1, m, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({i});
    setpart_rec(i + 1, m, cur, out);
    cur.pop_back();
}

}  // namespace

std::vector<IntPartition> partitions_of_length(int n, int len)
{
    std::vector<IntPartition> out;
    if (len <= 0 || n < len) return out;
    IntPartition cur;
    parts_rec(n, len, n, cur, out);
    return out;
}

Rational aut(const IntPartition& mu)
{
    std::map<int, int> mult;
    for (int p : mu) ++mult[p];
    Rational r = 1;
    for (auto [p, m] : mult) r *= factorial(m);
    return r;
}

std::vector<SetPartition> set_partitions(int m)
{
    std::vector<SetPartition> out;
    SetPartition cur;
    setpart_rec(0, m, cur, out);
    return out;
}

}  // namespace gwpt
