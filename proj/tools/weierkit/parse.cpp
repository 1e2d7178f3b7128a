#include "parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace weierkit::cli {

namespace {

std::string strip(const std::string& s)
{
    std::string out;
    std::copy_if(s.begin(), s.end(), std::back_inserter(out), [](unsigned char c) { return !std::isspace(c); });
    return out;
}

double to_double(std::string_view s, const std::string& whole)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
        throw MalformedInput("cannot parse number '" + whole + "'");
    return v;
}

} // namespace

Complex parse_complex(const std::string& text)
{
    const std::string s = strip(text);
    if (s.empty())
        throw MalformedInput("empty complex number");
    if (s.back() != 'i')
        return {to_double(s, text), 0.0};

    const std::string_view body(s.data(), s.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    const std::string_view re = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view im = split == std::string_view::npos ? body : body.substr(split);
    double imag = 0.0;
    if (im.empty() || im == "+")
        imag = 1.0;
    else if (im == "-")
        imag = -1.0;
    else
        imag = to_double(im, text);
    return {re.empty() ? 0.0 : to_double(re, text), imag};
}

double parse_real(const std::string& text)
{
    const Complex z = parse_complex(text);
    if (z.imag() != 0.0)
        throw MalformedInput("expected a real number, got '" + text + "'");
    return z.real();
}

int parse_int(const std::string& text)
{
    const std::string s = strip(text);
    int v = 0;
    const char* first = s.data() + (!s.empty() && s.front() == '+');
    const auto [end, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
        throw MalformedInput("cannot parse integer '" + text + "'");
    return v;
}

namespace {

std::vector<std::string> split_commas(const std::string& text)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (strip(text).empty())
        return {};
    return parts;
}

} // namespace

std::vector<Complex> parse_complex_list(const std::string& text)
{
    std::vector<Complex> out;
    for (const auto& p : split_commas(text))
        out.push_back(parse_complex(p));
    return out;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    for (const auto& p : split_commas(text))
        out.push_back(parse_int(p));
    return out;
}

} // namespace weierkit::cli
