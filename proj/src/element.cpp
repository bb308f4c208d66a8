#include "weilad/weil_functor.hpp"

#include <sstream>

namespace weilad {

WeilNumber<Rational> parse_element(const AlgebraPtr& w, std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string_view::npos && text[first] == '[') {
    const auto close = text.find(']', first);
    if (close == std::string_view::npos) throw ParseError(text.size() + 1, "missing ']' in coefficient list");
    std::vector<Rational> coeffs;
    std::istringstream in{std::string(text.substr(first + 1, close - first - 1))};
    for (std::string item; std::getline(in, item, ',');) {
      const auto b = item.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      coeffs.push_back(parse_rational(item.substr(b, item.find_last_not_of(" \t") - b + 1)));
    }
    if (coeffs.size() != w->dim())
      throw Error(ErrorCode::bad_parameter, "coefficient list has " + std::to_string(coeffs.size()) +
                                                " entries but " + w->name() + " has dim " + std::to_string(w->dim()));
    return WeilNumber<Rational>(w, std::move(coeffs));
  }
  const SmoothMap f = parse_function(w->generator_names(), {std::string(text)});
  const auto zero = WeilNumber<Rational>::constant(w, Rational(0));
  std::vector<WeilNumber<Rational>> gens;
  for (std::size_t g = 0; g < w->generator_names().size(); ++g) {
    const auto idx = w->index_of(Monomial::power(g, 1));
    gens.push_back(idx ? WeilNumber<Rational>::seeded(w, Rational(0), *idx) : zero);
  }
  return evaluate<WeilNumber<Rational>>(f, std::span<const WeilNumber<Rational>>(gens), zero).front();
}

}  // namespace weilad
