#include "apfrac/real_spec.hpp"

#include <algorithm>
#include <cctype>

#include "apfrac/errors.hpp"

namespace apfrac {

namespace {

std::string strip_spaces(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    }
    return out;
}

// Integer that may be wrapped in one layer of parentheses.
Int parse_int_parens(const std::string& s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        return parse_int(s.substr(1, s.size() - 2));
    }
    return parse_int(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

RealSpec RealSpec::rational(const Int& p, const Int& q) {
    if (sgn(q) == 0) throw PreconditionError("rational with zero denominator");
    return rational(make_rat(p, q));
}

RealSpec RealSpec::rational(Rat value) {
    RealSpec spec;
    spec.kind_ = RealKind::Rational;
    spec.rational_ = std::move(value);
    return spec;
}

RealSpec RealSpec::surd(const Int& P, const Int& D, const Int& R) {
    if (sgn(D) <= 0) throw PreconditionError("surd radicand must be positive");
    if (is_perfect_square(D)) {
        throw PreconditionError("surd radicand " + D.get_str() + " is a perfect square: rational input");
    }
    if (sgn(R) == 0) throw PreconditionError("surd with zero denominator");
    RealSpec spec;
    spec.kind_ = RealKind::Surd;
    spec.p_ = P;
    spec.d_ = D;
    spec.r_ = R;
    return spec;
}

RealSpec RealSpec::digit_stream(const Int& a0, std::vector<Int> digits) {
    for (const Int& d : digits) {
        if (d < 1) throw PreconditionError("digit stream entries must be >= 1");
    }
    RealSpec spec;
    spec.kind_ = RealKind::DigitStream;
    spec.a0_ = a0;
    spec.digits_ = std::move(digits);
    return spec;
}

RealSpec RealSpec::parse(const std::string& text) {
    std::string s = strip_spaces(text);
    size_t colon = s.find(':');
    if (colon == std::string::npos) {
        throw PreconditionError("real spec needs a 'rat:'/'surd:'/'digits:' prefix: '" + text + "'");
    }
    std::string tag = s.substr(0, colon);
    std::string body = s.substr(colon + 1);
    if (tag == "rat") {
        auto parts = split(body, '/');
        if (parts.size() == 1) return rational(parse_int(parts[0]), Int(1));
        if (parts.size() == 2) return rational(parse_int(parts[0]), parse_int(parts[1]));
        throw PreconditionError("malformed rational: '" + text + "'");
    }
    if (tag == "surd") {
        // (P+sqrt(D))/R
        size_t sq = body.find("+sqrt(");
        size_t close = body.find("))/");
        if (body.empty() || body[0] != '(' || sq == std::string::npos || close == std::string::npos ||
            close < sq) {
            throw PreconditionError("malformed surd, expected (P+sqrt(D))/R: '" + text + "'");
        }
        Int P = parse_int(body.substr(1, sq - 1));
        Int D = parse_int(body.substr(sq + 6, close - (sq + 6)));
        Int R = parse_int_parens(body.substr(close + 3));
        return surd(P, D, R);
    }
    if (tag == "digits") {
        auto head = split(body, ';');
        if (head.empty() || head.size() > 2) {
            throw PreconditionError("malformed digit stream: '" + text + "'");
        }
        Int a0 = parse_int(head[0]);
        std::vector<Int> digits;
        if (head.size() == 2 && !head[1].empty()) {
            for (const std::string& part : split(head[1], ',')) digits.push_back(parse_int(part));
        }
        return digit_stream(a0, std::move(digits));
    }
    throw PreconditionError("unknown real spec tag '" + tag + "'");
}

const Rat& RealSpec::rational_value() const {
    if (kind_ != RealKind::Rational) throw PreconditionError("not a rational spec");
    return rational_;
}

const Int& RealSpec::surd_p() const {
    if (kind_ != RealKind::Surd) throw PreconditionError("not a surd spec");
    return p_;
}

const Int& RealSpec::surd_d() const {
    if (kind_ != RealKind::Surd) throw PreconditionError("not a surd spec");
    return d_;
}

const Int& RealSpec::surd_r() const {
    if (kind_ != RealKind::Surd) throw PreconditionError("not a surd spec");
    return r_;
}

const Int& RealSpec::stream_a0() const {
    if (kind_ != RealKind::DigitStream) throw PreconditionError("not a digit stream spec");
    return a0_;
}

const std::vector<Int>& RealSpec::stream_digits() const {
    if (kind_ != RealKind::DigitStream) throw PreconditionError("not a digit stream spec");
    return digits_;
}

long RealSpec::stream_horizon() const {
    return static_cast<long>(stream_digits().size());
}

std::string RealSpec::to_string() const {
    switch (kind_) {
    case RealKind::Rational:
        if (rational_.get_den() == 1) return "rat:" + rational_.get_num().get_str();
        return "rat:" + rational_.get_num().get_str() + "/" + rational_.get_den().get_str();
    case RealKind::Surd: {
        std::string r = r_.get_str();
        if (sgn(r_) < 0) r = "(" + r + ")";
        return "surd:(" + p_.get_str() + "+sqrt(" + d_.get_str() + "))/" + r;
    }
    case RealKind::DigitStream: {
        std::string out = "digits:" + a0_.get_str();
        for (size_t i = 0; i < digits_.size(); ++i) {
            out += (i == 0 ? ";" : ",");
            out += digits_[i].get_str();
        }
        return out;
    }
    }
    throw PreconditionError("corrupt real spec");
}

RealSpec scale_real(const RealSpec& xi, const Int& num, const Int& den) {
    if (sgn(num) == 0 || sgn(den) == 0) {
        throw PreconditionError("scale factor must be a nonzero rational");
    }
    switch (xi.kind()) {
    case RealKind::Rational:
        return RealSpec::rational(xi.rational_value() * make_rat(num, den));
    case RealKind::Surd: {
        // (num/den) * (P + sqrt(D))/R = (|num| P + sqrt(num^2 D)) / (sgn(num) den R):
        // the radical absorbs |num| only, so num's sign moves to the denominator.
        Int n = num;
        Int r = xi.surd_r();
        if (sgn(n) < 0) {
            n = -n;
            r = -r;
        }
        return RealSpec::surd(n * xi.surd_p(), n * n * xi.surd_d(), den * r);
    }
    case RealKind::DigitStream:
        throw PreconditionError("digit streams cannot be rescaled exactly");
    }
    throw PreconditionError("corrupt real spec");
}

} // namespace apfrac
