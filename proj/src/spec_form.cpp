// Canonical textual form of GmmsSpec:
//   thermal:nbar=1.0 | cvmms:b=2.0 | squeezed:b=2.0,s=0.3,phi=0.7854 | riemann:b=1.0,delta=0.1

#include <charconv>
#include <map>
#include <sstream>

#include "gmms/errors.hpp"
#include "gmms/io.hpp"
#include "gmms/states.hpp"

namespace gmms {

namespace {

double parse_number(std::string_view text, std::string_view field) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw SpecError("spec field '" + std::string(field) + "': not a number: '" + std::string(text) + "'");
    return v;
}

std::map<std::string, double, std::less<>> parse_fields(std::string_view text) {
    std::map<std::string, double, std::less<>> fields;
    while (!text.empty()) {
        const std::size_t comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        text = (comma == std::string_view::npos) ? std::string_view{} : text.substr(comma + 1);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw SpecError("spec field '" + std::string(item) + "': expected name=value");
        const std::string key(item.substr(0, eq));
        if (fields.count(key)) throw SpecError("spec field '" + key + "' given twice");
        fields.emplace(key, parse_number(item.substr(eq + 1), key));
    }
    return fields;
}

double take(std::map<std::string, double, std::less<>>& fields, const char* name) {
    auto it = fields.find(name);
    if (it == fields.end()) throw SpecError(std::string("spec is missing field '") + name + "'");
    const double v = it->second;
    fields.erase(it);
    return v;
}

void expect_empty(const std::map<std::string, double, std::less<>>& fields, const char* kind) {
    if (!fields.empty())
        throw SpecError("spec field '" + fields.begin()->first + "' is not valid for kind '" + kind + "'");
}

} // namespace

GmmsSpec GmmsSpec::parse(std::string_view text) {
    const std::size_t colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    auto fields = parse_fields(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));

    if (kind == "thermal") {
        const double nbar = take(fields, "nbar");
        expect_empty(fields, "thermal");
        return GmmsSpec::thermal(nbar);
    }
    if (kind == "cvmms") {
        const double b = take(fields, "b");
        expect_empty(fields, "cvmms");
        return GmmsSpec::cvmms(b);
    }
    if (kind == "squeezed") {
        const double b = take(fields, "b");
        const double s = take(fields, "s");
        const double phi = take(fields, "phi");
        expect_empty(fields, "squeezed");
        return GmmsSpec::squeezed(b, s, phi);
    }
    if (kind == "riemann") {
        const double b = take(fields, "b");
        const double delta = take(fields, "delta");
        expect_empty(fields, "riemann");
        return GmmsSpec::riemann(b, delta);
    }
    throw SpecError("unknown spec kind '" + std::string(kind) + "'");
}

std::string GmmsSpec::to_string() const {
    std::ostringstream out;
    out << kind_name() << ':';
    switch (kind) {
        case Kind::thermal: out << "nbar=" << format_double(nbar); break;
        case Kind::cvmms: out << "b=" << format_double(b); break;
        case Kind::squeezed:
            out << "b=" << format_double(b) << ",s=" << format_double(s) << ",phi=" << format_double(phi);
            break;
        case Kind::riemann: out << "b=" << format_double(b) << ",delta=" << format_double(delta); break;
    }
    return out.str();
}

} // namespace gmms
