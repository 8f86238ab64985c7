// Coefficient tables. Written leading term first so each factor can be read
// against its printed form. Transcription errors show up immediately as a
// non-zero residual at small n in verify_annihilates.

#include "recurrences.hpp"

namespace trisum {

namespace {

using P = IntPolynomial;

P d(std::initializer_list<long long> c) { return P::descending(c); }
P k(long long c) { return P::constant(c); }

// Linear factors that recur throughout.
P n_plus(long long a) { return d({1, a}); }
P two_n_plus(long long a) { return d({2, a}); }

PolynomialRecurrence make_r5() {
  PolynomialRecurrence r{RecurrenceId::R5, "R5", {}};
  r.coeffs.push_back(P::product(
      {k(512), n_plus(-1), n_plus(2), two_n_plus(-1), two_n_plus(1), two_n_plus(3),
       two_n_plus(3), d({7056, 90958, 438943, 960044, 877175, 187500})}));
  r.coeffs.push_back(P::product(
      {k(-64), n_plus(1), two_n_plus(1), two_n_plus(3),
       d({7056, 6286, -938209, -8101907, -29947351, -56721017, -53422948, -18893910, 1125000})}));
  r.coeffs.push_back(P::product(
      {k(-16), n_plus(1), n_plus(2), two_n_plus(3),
       d({225792, 3729152, 25149436, 88143056, 165692905, 141655826, -9994217, -100176150,
          -47709000})}));
  r.coeffs.push_back(P::product(
      {k(4), n_plus(1), n_plus(2), n_plus(3),
       d({56448, 558320, 373360, -15659602, -82475561, -185781850, -205165415, -98261100,
          -10317600})}));
  r.coeffs.push_back(P::product(
      {k(4), n_plus(1), n_plus(2), n_plus(3), n_plus(4), n_plus(4),
       d({56448, 628880, 2620038, 4826445, 2994664, -1570545, -1935450})}));
  r.coeffs.push_back(P::product(
      {k(-1), n_plus(1), n_plus(2), n_plus(3), n_plus(4), n_plus(5), n_plus(5),
       d({7056, 55678, 145671, 118403, -54636, -84672})}));
  return r;
}

PolynomialRecurrence make_r3() {
  PolynomialRecurrence r{RecurrenceId::R3, "R3", {}};
  r.coeffs.push_back(P::product(
      {k(128), n_plus(-1), n_plus(2), two_n_plus(1), two_n_plus(3), d({7, 15})}));
  r.coeffs.push_back(P::product({k(-16), n_plus(1), d({7, -6, -121, -210, -90})}));
  r.coeffs.push_back(P::product({k(-4), n_plus(1), n_plus(2), n_plus(2), d({56, 127, 57})}));
  r.coeffs.push_back(P::product({n_plus(1), n_plus(2), n_plus(3), n_plus(3), d({7, 8})}));
  return r;
}

PolynomialRecurrence make_w5() {
  PolynomialRecurrence r{RecurrenceId::W5, "W5", {}};
  r.coeffs.push_back(P::product(
      {k(-512), n_plus(-3), n_plus(2), two_n_plus(-5), two_n_plus(1), two_n_plus(3),
       two_n_plus(3), two_n_plus(5), two_n_plus(7), two_n_plus(9),
       d({3993696, 101741444, 1106902594, 6675903296, 24039265882, 50526147407, 49093431499,
          -22567478757, -115591006351, -118410894910, -43001171400})}));
  r.coeffs.push_back(P::product(
      {k(64), n_plus(1), two_n_plus(3), two_n_plus(5), two_n_plus(7), two_n_plus(9),
       d({7987392, -175918232, -7078653400, -80904072538, -450205035754, -1235909690096,
          -684324942173, 5752795629096, 17070643824448, 16426830143582, -8252471533811,
          -32840781231384, -29184924754630, -11229082751700, -1771825878000})}));
  r.coeffs.push_back(P::product(
      {k(16), n_plus(1), n_plus(2), two_n_plus(5), two_n_plus(7), two_n_plus(9),
       d({255596544, 6351704576, 65334850448, 346171943648, 870630300008, -154616465854,
          -7786336958932, -23352735092682, -30879971643605, -8340607431055, 32770026974177,
          51322013010691, 35260464547296, 12208208518740, 1725138622800})}));
  r.coeffs.push_back(P::product(
      {k(-4), n_plus(1), n_plus(2), n_plus(3), two_n_plus(3), two_n_plus(7), two_n_plus(9),
       d({31949568, 47141920, -8899203264, -119872488660, -729008210810, -2427338831964,
          -4192616628250, -1193459139415, 10701703824509, 24849269008557, 27637389771751,
          17335661249538, 5872316424120, 832457390400})}));
  r.coeffs.push_back(P::product(
      {k(-4), n_plus(1), n_plus(2), n_plus(3), n_plus(4), two_n_plus(3), two_n_plus(5),
       two_n_plus(9),
       d({31949568, 710095456, 6681317524, 34029339728, 96227598957, 112933571943,
          -172413925739, -927631519653, -1726986013160, -1811282710094, -1125028801230,
          -387378800500, -56652486000})}));
  r.coeffs.push_back(P::product(
      {n_plus(1), n_plus(2), n_plus(3), n_plus(4), n_plus(5), n_plus(5), two_n_plus(3),
       two_n_plus(5), two_n_plus(7),
       d({3993696, 61804484, 370945918, 1004131008, 593610306, -3689013381, -11102496870,
          -14727940451, -10684139174, -4158064376, -674002560})}));
  return r;
}

PolynomialRecurrence make_w3() {
  PolynomialRecurrence r{RecurrenceId::W3, "W3", {}};
  r.coeffs.push_back(P::product(
      {k(-128), n_plus(-3), n_plus(2), two_n_plus(1), two_n_plus(3), two_n_plus(3),
       two_n_plus(5), d({63, 390, 785, 506})}));
  r.coeffs.push_back(P::product(
      {k(16), n_plus(1), two_n_plus(3), two_n_plus(5),
       d({63, -933, -7645, -17421, -13730, -2538, -252})}));
  r.coeffs.push_back(P::product(
      {k(4), n_plus(1), n_plus(2), two_n_plus(1), two_n_plus(5),
       d({504, 2805, 5464, 4575, 1400, -60})}));
  r.coeffs.push_back(P::product(
      {k(-1), n_plus(1), n_plus(2), n_plus(3), n_plus(3), two_n_plus(1), two_n_plus(3),
       d({63, 201, 194, 48})}));
  return r;
}

OperatorCombination make_comb_x() {
  const P p5 = d({7056, 90958, 438943, 960044, 877175, 187500});
  const P q6 = d({12348, 175028, 969283, 2677654, 3865514, 2712498, 679905});
  const P p5b = d({7056, 55678, 145671, 118403, -54636, -84672});
  OperatorCombination c{CombinationId::CombX, "combX", RecurrenceId::R5, RecurrenceId::R3,
                        P::product({d({7, 15}), d({7, 22})}), {}};
  c.small_terms.emplace_back(
      0, P::product({k(-4), two_n_plus(-1), two_n_plus(3), d({7, 22}), p5}));
  c.small_terms.emplace_back(1, P::product({k(-16), n_plus(1), q6}));
  c.small_terms.emplace_back(2, P::product({n_plus(1), n_plus(2), d({7, 15}), p5b}));
  return c;
}

OperatorCombination make_comb_z() {
  const P a = d({63, 390, 785, 506});
  const P b = d({63, 579, 1754, 1744});
  const P p10 = d({3993696, 101741444, 1106902594, 6675903296, 24039265882, 50526147407,
                   49093431499, -22567478757, -115591006351, -118410894910, -43001171400});
  const P p13 = d({754808544, 21322656936, 262462697910, 1845558281063, 8129372080496,
                   22891046730211, 38943827465846, 28214897181357, -31234241796612,
                   -104745740003975, -123454281828448, -77917639095288, -25845991472440,
                   -3509843409600});
  const P p10b = d({3993696, 61804484, 370945918, 1004131008, 593610306, -3689013381,
                    -11102496870, -14727940451, -10684139174, -4158064376, -674002560});
  OperatorCombination c{CombinationId::CombZ, "combZ", RecurrenceId::W5, RecurrenceId::W3,
                        P::product({a, b}), {}};
  c.small_terms.emplace_back(
      0, P::product({k(-4), two_n_plus(-5), two_n_plus(7), two_n_plus(9), b, p10}));
  c.small_terms.emplace_back(1, P::product({k(-4), n_plus(1), two_n_plus(9), p13}));
  // The last shift is 2: with shift 3 the combination does not vanish.
  c.small_terms.emplace_back(2, P::product({n_plus(1), n_plus(2), two_n_plus(3), a, p10b}));
  return c;
}

}  // namespace

const PolynomialRecurrence& recurrence(RecurrenceId id) {
  static const PolynomialRecurrence tables[] = {make_r5(), make_r3(), make_w5(), make_w3()};
  return tables[static_cast<int>(id)];
}

const OperatorCombination& combination(CombinationId id) {
  static const OperatorCombination tables[] = {make_comb_x(), make_comb_z()};
  return tables[static_cast<int>(id)];
}

}  // namespace trisum
