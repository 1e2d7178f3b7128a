// Property checks A1..A13, one line each.
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "identities.hpp"

namespace {

struct Criterion {
    std::string id;
    std::string suite;
    double time_limit_s;
};

struct Job {
    std::string args;
};

std::string run_captured(const std::string& cmd, int& status)
{
    std::string out;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((cmd + " 2>&1").c_str(), "r"), pclose);
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
        out.append(buf.data(), n);
    status = pclose(pipe.release());
    return out;
}

void report(const std::string& id, bool ok, const std::string& detail)
{
    std::cout << id << ' ' << (ok ? "PASS" : "FAIL") << ' ' << detail << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::cerr << "usage: weierkit_acceptance <weierkit binary> <data dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string data = argv[2];

    const std::vector<Criterion> criteria = {
        {"A1", "derivative-descent", 10.0}, {"A2", "laurent", 0.0},
        {"A3", "eisenstein-anomaly", 0.0},  {"A4", "lambda-shift", 0.0},
        {"A5", "quasi-jacobi", 0.0},        {"A6", "twist-degeneration", 0.0},
        {"A7", "genus0", 0.0},              {"A8", "genus2-conjugation", 0.0},
        {"A9", "genus2-inversion", 0.0},    {"A10", "genus2-degeneration", 0.0},
        {"A11", "genusg-kernel", 0.0},      {"A12", "reduction-structure", 0.0},
    };

    bool all = true;
    const auto start_all = std::chrono::steady_clock::now();
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            const auto r = weierkit::identities::run_suite(c.suite);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            ok = r.passed() && (c.time_limit_s == 0.0 || secs < c.time_limit_s);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s checks=%zu worst=%.3e time=%.3fs", c.suite.c_str(), r.checks.size(),
                          r.worst_residual(), secs);
            detail = buf;
            for (const auto& chk : r.checks)
                if (!chk.passed)
                    detail += " failed:" + chk.name;
        } catch (const std::exception& e) {
            detail = c.suite + " threw: " + e.what();
        }
        report(c.id, ok, detail);
        all = all && ok;
    }

    const std::vector<Job> jobs = {
        {"eval --fn E --k 4 --tau 0.3+1.1i"},
        {"eval --fn E_transform --k 2 --tau 0+2i --gamma 0,-1,1,0"},
        {"eval --fn P --m 2 --w 0.21+0.3i --tau 0+2i --format csv"},
        {"eval --fn P_tilde --m 1 --w 0.21+0.3i --z 0.3+0.2i --tau 0+2i"},
        {"eval --fn twisted_P --k 2 --theta 0.2 --lambda 0.3 --w 0.21+0.3i --tau 0+2i"},
        {"eval --fn f_rational --n 2 --m 3 --z 1.5 --w 0.2"},
        {"expand --fn E --k 6 --order 12"},
        {"expand --fn f_rational --n 1 --m 2 --order 8"},
        {"identity-check --suite genus0 --threads 4"},
        {"identity-check --suite reduction-structure --threads 3"},
        {"reduce --system elliptic --tau 0+2i --family " + data + "/family.json --points 0.1+0.3i,0.45+0.7i --op delta"},
        {"reduce --system elliptic --tau 0+2i --family " + data +
         "/family.json --points 0.1+0.3i,0.45+0.7i,0.8+1.1i --op nullpoint"},
        {"reduce --system rational --family " + data + "/rational.json --points 0.3+0.1i,1.1-0.4i,-0.7+0.9i --op chain"},
        {"genus2-kernel --what Q --tau1 0.1+1i --tau2 -0.2+1.3i --epsilon 0.01 --p 2 --matrix-size 16 --x 0.2+0.1i"},
        {"genus2-kernel --what weierstrass --tau1 0.1+1i --tau2 -0.2+1.3i --epsilon 0.01 --p 1 --j 0 "
         "--x 0.2+0.1i --y -0.15+0.05i --matrix-size 16"},
        {"genusg-kernel --what psi --g 2 --w-minus=-1,0-1.5i --w-plus 1.2+0.1i,0.2+1.4i --rho 0.001 --p 1 "
         "--x 0.3+0.2i --y -0.2+0.4i --matrix-size 12"},
        {"eval --fn P --m 1 --w 0 --tau 0+2i"},
    };

    std::size_t identical = 0;
    std::string mismatched;
    for (const auto& j : jobs) {
        const std::string cmd = "\"" + cli + "\" " + j.args;
        int s1 = 0, s2 = 0;
        const std::string a = run_captured(cmd, s1);
        const std::string b = run_captured(cmd, s2);
        if (a == b && s1 == s2 && !a.empty())
            ++identical;
        else
            mismatched += " [" + j.args + "]";
    }
    const bool det = identical == jobs.size();
    report("A13", det,
           "cli-determinism jobs=" + std::to_string(jobs.size()) + " identical=" + std::to_string(identical) +
               mismatched);
    all = all && det;

    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_all).count();
    std::cout << "total " << total << "s\n";
    return all ? 0 : 1;
}
