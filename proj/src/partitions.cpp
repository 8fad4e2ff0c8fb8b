#include "isoforge/partitions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace isoforge {

int size(const Partition& la) { return std::accumulate(la.begin(), la.end(), 0); }

bool is_partition(const Partition& la) {
  for (size_t i = 0; i < la.size(); ++i) {
    if (la[i] <= 0) return false;
    if (i > 0 && la[i] > la[i - 1]) return false;
  }
  return true;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Partition conj(const Partition& la) {
  Partition c;
  if (la.empty()) return c;
  for (int j = 1; j <= la[0]; ++j) {
    int cnt = 0;
    for (int x : la)
      if (x >= j) ++cnt;
    c.push_back(cnt);
  }
  return c;
}

bool is_self_conj(const Partition& la) { return conj(la) == la; }

Int z_order(const Partition& la) {
  Int z = 1;
  size_t i = 0;
  while (i < la.size()) {
    size_t j = i;
    while (j < la.size() && la[j] == la[i]) ++j;
    long m = static_cast<long>(j - i);
    for (long t = 1; t <= m; ++t) z *= Int(la[i]) * t;
    i = j;
  }
  return z;
}

int sign_of_type(const Partition& pi) {
  int s = 0;
  for (int x : pi) s += x - 1;
  return (s % 2) ? -1 : 1;
}

std::string to_string(const Partition& la) {
  if (la.empty()) return "";
  std::ostringstream os;
  for (size_t i = 0; i < la.size(); ++i) {
    if (i) os << ',';
    os << la[i];
  }
  return os.str();
}

Partition parse_partition(const std::string& text) {
  Partition la;
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t.push_back(c);
  if (t.empty() || t == "0" || t == "-" || t == "empty") return la;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("bad partition: " + text);
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad partition: " + text);
    la.push_back(v);
  }
  if (!is_partition(la)) throw std::invalid_argument("not a partition: " + text);
  return la;
}

std::vector<int> beta_set(const Partition& la, int N) {
  if (N < static_cast<int>(la.size())) throw std::invalid_argument("beta_set: N too small");
  std::vector<int> b(N);
  for (int i = 0; i < N; ++i) b[i] = (i < static_cast<int>(la.size()) ? la[i] : 0) + N - 1 - i;
  return b;
}

Partition from_beta(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  int N = static_cast<int>(beta.size());
  Partition la;
  for (int i = 0; i < N; ++i) {
    int v = beta[i] - (N - 1 - i);
    if (v < 0) throw std::invalid_argument("from_beta: repeated bead");
    if (v > 0) la.push_back(v);
  }
  return la;
}

std::vector<std::pair<Hook, Partition>> hooks(const Partition& la, int q) {
  std::vector<std::pair<Hook, Partition>> out;
  if (q <= 0) return out;
  int N = static_cast<int>(la.size());
  auto beta = beta_set(la, N);
  std::set<int> bs(beta.begin(), beta.end());
  for (int i = 0; i < N; ++i) {
    int b = beta[i];
    if (b - q < 0 || bs.count(b - q)) continue;
    int leg = 0;
    for (int x : beta)
      if (x > b - q && x < b) ++leg;
    auto nb = beta;
    nb[i] = b - q;
    int col = la[i] + 1 + leg - q;
    out.push_back({Hook{i + 1, col, q, leg}, from_beta(nb)});
  }
  return out;
}

bool is_core(const Partition& la, int p) { return hooks(la, p).empty(); }

static int runner_length(int len, int p) { return ((len + p - 1) / p) * p; }

CoreQuotient core_quotient(const Partition& la, int p) {
  if (p < 2) throw std::invalid_argument("core_quotient: p < 2");
  int N = runner_length(static_cast<int>(la.size()), p);
  auto beta = beta_set(la, N);
  CoreQuotient cq;
  cq.quotient.resize(p);
  std::vector<int> core_beta;
  for (int r = 0; r < p; ++r) {
    std::vector<int> xs;
    for (int b : beta)
      if (b % p == r) xs.push_back((b - r) / p);
    std::sort(xs.begin(), xs.end(), std::greater<>());
    int k = static_cast<int>(xs.size());
    Partition part;
    for (int j = 0; j < k; ++j) {
      int v = xs[j] - (k - 1 - j);
      if (v > 0) part.push_back(v);
    }
    cq.quotient[r] = part;
    for (int t = 0; t < k; ++t) core_beta.push_back(r + p * t);
  }
  cq.core = from_beta(core_beta);
  return cq;
}

Partition from_core_quotient(const Partition& core, const std::vector<Partition>& q, int p) {
  if (static_cast<int>(q.size()) != p) throw std::invalid_argument("quotient has wrong length");
  if (!is_core(core, p)) throw std::invalid_argument("from_core_quotient: core has a p-hook");
  size_t m = 0;
  for (auto& c : q) m = std::max(m, c.size());
  int N = runner_length(static_cast<int>(core.size()), p) + p * static_cast<int>(m);
  auto beta = beta_set(core, N);
  std::vector<int> nb;
  for (int r = 0; r < p; ++r) {
    int k = 0;
    for (int b : beta)
      if (b % p == r) ++k;
    for (int j = 0; j < k; ++j) {
      int v = j < static_cast<int>(q[r].size()) ? q[r][j] : 0;
      nb.push_back(r + p * (v + k - 1 - j));
    }
  }
  return from_beta(nb);
}

int weight(const Partition& la, int p) {
  auto cq = core_quotient(la, p);
  return (size(la) - size(cq.core)) / p;
}

std::vector<Partition> quotient_conj(const std::vector<Partition>& q) {
  std::vector<Partition> out;
  for (auto it = q.rbegin(); it != q.rend(); ++it) out.push_back(conj(*it));
  return out;
}

int delta_sign(const Partition& la, int q) {
  int s = 1;
  Partition cur = la;
  while (true) {
    auto hs = hooks(cur, q);
    if (hs.empty()) break;
    if (hs[0].first.leg % 2) s = -s;
    cur = hs[0].second;
  }
  return s;
}

std::vector<int> a_map(const Partition& la) {
  if (!is_self_conj(la)) throw std::invalid_argument("a_map: partition is not self-conjugate");
  std::vector<int> a;
  for (int i = 0; i < static_cast<int>(la.size()); ++i) {
    if (la[i] < i + 1) break;
    a.push_back(2 * (la[i] - i - 1) + 1);
  }
  return a;
}

Partition a_inverse(const std::vector<int>& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0 || a[i] % 2 == 0) throw std::invalid_argument("a_inverse: parts must be odd");
    if (i && a[i] >= a[i - 1]) throw std::invalid_argument("a_inverse: parts must be distinct");
  }
  int d = static_cast<int>(a.size());
  std::vector<int> arm(d);
  for (int i = 0; i < d; ++i) arm[i] = (a[i] - 1) / 2;
  Partition la;
  for (int i = 0; i < d; ++i) la.push_back(arm[i] + i + 1);
  // rows below the diagonal come from the legs
  for (int row = d + 1;; ++row) {
    int cnt = 0;
    for (int j = 0; j < d; ++j)
      if (arm[j] + j + 1 >= row) ++cnt;
    if (cnt == 0) break;
    la.push_back(cnt);
  }
  return la;
}

std::optional<Partition> mu_lambda(const Partition& la, int q) {
  if (q % 2 == 0) throw std::invalid_argument("mu_lambda: q must be odd");
  auto a = a_map(la);
  auto it = std::find(a.begin(), a.end(), q);
  if (it == a.end()) return std::nullopt;
  a.erase(it);
  return a_inverse(a);
}

Partition psi_map(const Partition& la, int p, const Partition& core2) {
  if (!is_core(core2, p)) throw std::invalid_argument("psi_map: target is not a p-core");
  return from_core_quotient(core2, core_quotient(la, p).quotient, p);
}

int quotient_hook_leg(const Partition& la, const Partition& mu, int p) {
  auto ql = core_quotient(la, p).quotient;
  auto qm = core_quotient(mu, p).quotient;
  int r = -1;
  for (int i = 0; i < p; ++i)
    if (ql[i] != qm[i]) {
      if (r >= 0) throw std::invalid_argument("quotient_hook_leg: several components differ");
      r = i;
    }
  if (r < 0) throw std::invalid_argument("quotient_hook_leg: quotients agree");
  int a = size(ql[r]) - size(qm[r]);
  for (auto& [h, nu] : hooks(ql[r], a))
    if (nu == qm[r]) return h.leg;
  throw std::invalid_argument("quotient_hook_leg: not a hook removal");
}

}  // namespace isoforge
