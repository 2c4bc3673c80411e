#include "lacuna/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace lacuna::io {

namespace {

static_assert(std::endian::native == std::endian::little, "the .f2d codec assumes a little-endian host");

template <class T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("f2d: truncated stream");
    return v;
}

// Lines with content; '#' starts a comment.
template <class Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        fn(ls, line, no);
    }
}

[[noreturn]] void bad_line(const char* what, std::size_t no) {
    throw Error(std::string(what) + ": malformed line " + std::to_string(no));
}

void expect_end(std::istringstream& ls, const char* what, std::size_t no) {
    std::string rest;
    if (ls >> rest) bad_line(what, no);
}

}  // namespace

void write_field(std::ostream& out, const Field2D& f) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(f.n()));
    put<double>(out, f.period());
    for (const auto& v : f.values()) {
        put<double>(out, v.real());
        put<double>(out, v.imag());
    }
}

Field2D read_field(std::istream& in) {
    const auto n = get<std::uint32_t>(in);
    const auto period = get<double>(in);
    if (n == 0 || !is_power_of_two(n)) throw Error("f2d: n must be a power of two");
    if (!(period > 0)) throw Error("f2d: period must be positive");
    Field2D f(n, period);
    for (auto& v : f.values()) {
        const double re = get<double>(in);
        v = {re, get<double>(in)};
    }
    return f;
}

void save_field(const std::string& path, const Field2D& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    write_field(out, f);
}

Field2D load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_field(in);
}

void write_directions(std::ostream& out, const LacunarySet& s) {
    out << std::setprecision(17) << "lambda=" << s.ratio << '\n';
    for (double a : s.a) out << a << '\n';
}

LacunarySet read_directions(std::istream& in) {
    LacunarySet s;
    bool header = false;
    for_each_line(in, [&](std::istringstream& ls, const std::string& line, std::size_t no) {
        if (!header) {
            const auto eq = line.find('=');
            if (eq == std::string::npos || line.substr(0, eq).find("lambda") == std::string::npos)
                bad_line("directions header", no);
            s.ratio = std::stod(line.substr(eq + 1));
            header = true;
            return;
        }
        double a;
        if (!(ls >> a)) bad_line("directions", no);
        expect_end(ls, "directions", no);
        s.a.push_back(a);
    });
    if (!header) throw Error("directions: missing lambda header");
    validate_lacunary(s, LacunaryMode::Theorem);
    return s;
}

void write_coefficients(std::ostream& out, const CoefficientMap& c) {
    out << std::setprecision(17);
    for (const auto& [r, v] : c)
        out << r.grid << ' ' << r.n1 << ' ' << r.n2 << ' ' << r.m1 << ' ' << r.m2 << ' ' << v.real() << ' ' << v.imag()
            << '\n';
}

CoefficientMap read_coefficients(std::istream& in) {
    CoefficientMap c;
    for_each_line(in, [&](std::istringstream& ls, const std::string&, std::size_t no) {
        DyadicRectangle r;
        double re, im;
        if (!(ls >> r.grid >> r.n1 >> r.n2 >> r.m1 >> r.m2 >> re >> im)) bad_line("coefficients", no);
        expect_end(ls, "coefficients", no);
        if (!c.emplace(r, cplx(re, im)).second) throw Error("coefficients: duplicate rectangle on line " + std::to_string(no));
    });
    return c;
}

void write_collection(std::ostream& out, const RectCollection& s) {
    out << std::setprecision(17);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& r = s.rect(i);
        out << r.grid << ' ' << r.n1 << ' ' << r.n2 << ' ' << r.m1 << ' ' << r.m2 << ' ' << s.coeff(i).real() << ' '
            << s.coeff(i).imag() << ' ' << s.sign(i) << '\n';
    }
}

RectCollection read_collection(std::istream& in) {
    RectCollection s;
    for_each_line(in, [&](std::istringstream& ls, const std::string&, std::size_t no) {
        DyadicRectangle r;
        double re, im;
        int sign;
        if (!(ls >> r.grid >> r.n1 >> r.n2 >> r.m1 >> r.m2 >> re >> im >> sign)) bad_line("collection", no);
        expect_end(ls, "collection", no);
        if (sign != 1 && sign != -1) bad_line("collection sign", no);
        if (s.contains(r)) throw Error("collection: duplicate rectangle on line " + std::to_string(no));
        s.add(r, {re, im}, sign);
    });
    return s;
}

void write_weights(std::ostream& out, const CarlesonWeight& a) {
    out << std::setprecision(17);
    for (const auto& [r, v] : a.entries()) out << r.n1 << ' ' << r.n2 << ' ' << r.m1 << ' ' << r.m2 << ' ' << v << '\n';
}

CarlesonWeight read_weights(std::istream& in) {
    CarlesonWeight a;
    for_each_line(in, [&](std::istringstream& ls, const std::string&, std::size_t no) {
        DyadicRectangle r;
        double v;
        if (!(ls >> r.n1 >> r.n2 >> r.m1 >> r.m2 >> v)) bad_line("weights", no);
        expect_end(ls, "weights", no);
        if (r.n1 > 0 || r.n2 > 0 || r.m1 < 0 || r.m2 < 0 || r.m1 >= (1L << -r.n1) || r.m2 >= (1L << -r.n2))
            throw Error("weights: rectangle outside the unit square on line " + std::to_string(no));
        a.set(r, v);
    });
    return a;
}

// Certificate text: a header block then one `round` block per iteration, blank-line separated.
void write_certificate(std::ostream& out, const JnCertificate& c) {
    out << std::setprecision(17);
    out << "certificate jn\n"
        << "p " << c.p << "\n"
        << "epsilon " << c.epsilon << "\n"
        << "n " << c.n << "\n"
        << "u0 " << c.u0 << "\n"
        << "total " << c.total << "\n"
        << "constant " << c.constant << "\n"
        << "valid " << (c.valid ? 1 : 0) << "\n"
        << "failed_round " << c.failed_round << "\n";
    if (!c.failure.empty()) out << "failure " << c.failure << "\n";
    for (std::size_t i = 0; i < c.rounds.size(); ++i) {
        const auto& r = c.rounds[i];
        out << "\nround " << i << "\n"
            << "u " << r.u << "\n"
            << "e " << r.e << "\n"
            << "v " << r.v << "\n"
            << "int_fu " << r.int_fu << "\n"
            << "int_fv " << r.int_fv << "\n"
            << "drop " << r.drop << "\n"
            << "bound " << r.bound << "\n"
            << "halving " << r.halving << "\n"
            << "half_intersection " << r.half_intersection << "\n";
    }
}

JnCertificate read_certificate(std::istream& in) {
    JnCertificate c;
    bool header = false;
    JnRound* round = nullptr;
    for_each_line(in, [&](std::istringstream& ls, const std::string& line, std::size_t no) {
        std::string key;
        ls >> key;
        if (!header) {
            std::string kind;
            if (key != "certificate" || !(ls >> kind) || kind != "jn") bad_line("certificate header", no);
            header = true;
            return;
        }
        if (key == "round") {
            std::size_t idx;
            if (!(ls >> idx) || idx != c.rounds.size()) bad_line("certificate round index", no);
            round = &c.rounds.emplace_back();
            return;
        }
        if (key == "failure" && !round) {
            c.failure = line.substr(line.find("failure") + 8);
            return;
        }
        double v;
        if (!(ls >> v)) bad_line("certificate", no);
        expect_end(ls, "certificate", no);
        if (round) {
            static const std::map<std::string, double JnRound::*> fields = {
                {"u", &JnRound::u}, {"e", &JnRound::e}, {"v", &JnRound::v}, {"int_fu", &JnRound::int_fu},
                {"int_fv", &JnRound::int_fv}, {"drop", &JnRound::drop}, {"bound", &JnRound::bound}};
            if (key == "halving") round->halving = v != 0;
            else if (key == "half_intersection") round->half_intersection = v != 0;
            else if (const auto it = fields.find(key); it != fields.end()) round->*(it->second) = v;
            else bad_line("certificate round key", no);
            return;
        }
        if (key == "p") c.p = v;
        else if (key == "epsilon") c.epsilon = v;
        else if (key == "n") c.n = static_cast<std::size_t>(v);
        else if (key == "u0") c.u0 = v;
        else if (key == "total") c.total = v;
        else if (key == "constant") c.constant = v;
        else if (key == "valid") c.valid = v != 0;
        else if (key == "failed_round") c.failed_round = static_cast<int>(v);
        else bad_line("certificate key", no);
    });
    if (!header) throw Error("certificate: missing header");
    return c;
}

}  // namespace lacuna::io
