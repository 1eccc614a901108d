#include "spcover/catalog.hpp"

#include "spcover/optimize.hpp"
#include "spcover/scheme.hpp"
#include "spcover/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace spcover {

namespace {

StatedValue closed(std::string text, double v) { return {std::move(text), v, std::nullopt}; }

StatedValue decimal(const std::string& text) { return {text, std::strtod(text.c_str(), nullptr), std::nullopt}; }

StatedValue root(const std::string& text, IntPolynomial p) {
  return {text, std::strtod(text.c_str(), nullptr), std::move(p)};
}

Parameter param(std::string name, StatedValue v) { return {std::move(name), std::move(v)}; }

const double kS2 = std::sqrt(2.0), kS3 = std::sqrt(3.0), kS5 = std::sqrt(5.0), kS33 = std::sqrt(33.0);

std::vector<CatalogEntry> make_entries() {
  std::vector<CatalogEntry> out;
  auto add = [&](std::size_t n, Status st, Construction c, std::string scheme, int digits, double table_deg,
                 std::optional<double> ref_deg) -> CatalogEntry& {
    CatalogEntry e;
    e.n = n;
    e.status = st;
    e.construction = c;
    e.scheme_id = std::move(scheme);
    e.source_digits = digits;
    e.table_radius_deg = table_deg;
    e.reference_radius_deg = ref_deg;
    out.push_back(std::move(e));
    return out.back();
  };
  using enum Status;
  using enum Construction;

  {
    auto& e = add(2, PutativeGlobal, Radicals, "generic", 17, 90.0, std::nullopt);
    e.stated_height = closed("0", 0.0);
    e.stated_radius = closed("1", 1.0);
  }
  {
    auto& e = add(3, PutativeGlobal, Radicals, "generic", 17, 90.0, 90.0);
    e.stated_height = closed("0", 0.0);
    e.stated_radius = closed("1", 1.0);
  }
  {
    auto& e = add(4, PutativeGlobal, Radicals, "generic", 17, 70.5287793655, 70.528779);
    e.stated_height = closed("1/3", 1.0 / 3);
    e.stated_radius = closed("2*sqrt(2)/3", 2 * kS2 / 3);
  }
  {
    auto& e = add(5, PutativeGlobal, Radicals, "generic", 17, 63.4349488229, 63.434949);
    e.stated_height = closed("1/sqrt(5)", 1 / kS5);
    e.stated_radius = closed("2/sqrt(5)", 2 / kS5);
  }
  {
    auto& e = add(6, PutativeGlobal, Radicals, "generic", 17, 54.7356103172, 54.735610);
    e.stated_height = closed("1/sqrt(3)", 1 / kS3);
    e.stated_radius = closed("sqrt(2/3)", std::sqrt(2.0 / 3));
  }
  {
    auto& e = add(7, PutativeGlobal, Radicals, "generic", 17, 51.0265526631, 51.026553);
    e.stated_height = closed("sqrt(7+2*sqrt(5))/sqrt(29)", std::sqrt(7 + 2 * kS5) / std::sqrt(29.0));
    e.stated_radius = closed("sqrt(22-2*sqrt(5))/sqrt(29)", std::sqrt(22 - 2 * kS5) / std::sqrt(29.0));
    e.notes.push_back("equatorial caps built as a regular pentagon at azimuths 90+72k deg; the printed "
                      "y-entries carry stray parentheses and a sign slip");
  }
  {
    auto& e = add(8, PutativeGlobal, PolynomialRoots, "generic", 19, 48.1395290861, 48.138529);
    e.parameters = {
        param("a", root("0.1715313637258024789", {11, 0, 90, 0, 192, 0, 98, 0, -139, 0, 4})),
        param("b", root("0.9851786595630086290", {11, 0, -145, 0, 662, 0, -1324, 0, 1048, 0, -256})),
        param("c", root("0.7867473620995775835", {704, 0, -1281, 0, 814, 0, -160, 0, -14, 0, 1})),
        param("d", root("0.6172751317114242484", {704, 0, -2239, 0, 2730, 0, -1636, 0, 504, 0, -64})),
    };
    e.stated_height = root("0.6673188865845566185", {1331, 0, -2464, 0, 1738, 0, -1016, 0, 291, 0, -8});
    e.stated_radius = root("0.7447721152188417296", {1331, 0, -4191, 0, 5192, 0, -2724, 0, 272, 0, 128});
  }
  {
    auto& e = add(9, PutativeGlobal, PolynomialRoots, "tri9", 19, 45.8788878287, 45.878888);
    e.parameters = {param("a", root("0.6961773622954127151", {16, 0, -72, 0, 129, 0, -66, 0, 9}))};
    e.stated_height = root("0.6961773622954127151", {16, 0, -72, 0, 129, 0, -66, 0, 9});
    e.stated_radius = root("0.7178698212262454947", {4, -4, 3, 4, -4});
    e.coplanar_cells = false;
  }
  {
    auto& e = add(10, PutativeGlobal, Radicals, "generic", 17, 42.3078266301, 42.307827);
    e.stated_height = closed("sqrt((1+2*sqrt(2))/7)", std::sqrt((1 + 2 * kS2) / 7));
    e.stated_radius = closed("sqrt((6-2*sqrt(2))/7)", std::sqrt((6 - 2 * kS2) / 7));
  }
  {
    auto& e = add(11, LocalMinimum, Decimals, "dipole11", 57, 41.4271959586, 41.427196);
    e.parameters = {
        param("a", decimal("0.63409503272978866")), param("b", decimal("0.77086893831098640")),
        param("c", decimal("0.33662884921694819")), param("d", decimal("0.14901278677492066")),
        param("e", decimal("0.12144910794144531")), param("f", decimal("0.79620963643327190")),
        param("g", decimal("0.38915017551602934")), param("h", decimal("0.76812923417128375")),
        param("i", decimal("0.84262998826065059")), param("j", decimal("0.15965135305166729")),
    };
    e.stated_height = decimal("0.74979708749900207");
    e.stated_radius = decimal("0.66166783779930985");
    e.coplanar_cells = false;
    e.notes.push_back("the eighth parameter is printed as a second 'a'; read as h");
  }
  {
    auto& e = add(12, PutativeGlobal, Radicals, "generic", 17, 37.3773681406, 37.377368);
    e.stated_height = closed("sqrt((5+2*sqrt(5))/15)", std::sqrt((5 + 2 * kS5) / 15));
    e.stated_radius = closed("sqrt((10-2*sqrt(5))/15)", std::sqrt((10 - 2 * kS5) / 15));
    e.notes.push_back("y-entries printed as sqrt(5+-sqrt5)/10; unit norm needs sqrt((5+-sqrt5)/10)");
  }
  {
    auto& e = add(13, LocalMinimum, Decimals, "mirror13", 57, 37.0685427025, 37.068543);
    e.parameters = {
        param("a", decimal("0.86633416783238195")), param("b", decimal("0.84583241805693434")),
        param("c", decimal("0.52466963463937728")), param("d", decimal("0.015815081748801929")),
        param("e", decimal("0.69182852426517320")), param("f", decimal("0.85293882257906422")),
    };
    e.stated_height = decimal("0.79791498994105036");
    e.stated_radius = decimal("0.60276999662174087");
    e.coplanar_cells = false;
  }
  {
    auto& e = add(14, PutativeGlobal, Radicals, "hex14", 17, 34.9379269231, 34.937927);
    e.parameters = {param("t", closed("2*sqrt(3)-3", 2 * kS3 - 3))};
    e.stated_height = closed("sqrt((6*sqrt(3)-3)/11)", std::sqrt((6 * kS3 - 3) / 11));
    e.stated_radius = closed("sqrt((14-6*sqrt(3))/11)", std::sqrt((14 - 6 * kS3) / 11));
    e.notes.push_back("radius printed as sqrt((6*sqrt3-14)/11), negative under the root; h^2 + r^2 = 1 needs "
                      "sqrt((14-6*sqrt3)/11)");
  }
  {
    auto& e = add(15, PutativeGlobal, PolynomialRoots, "mirror15", 19, 34.0399001237, 34.039900);
    e.parameters = {
        param("a", root("0.7981658270508071459",
                        {866761, 0, -2571516, 0, 3920022, 0, -3748572, 0, 2360745, 0, -956448, 0, 186624})),
        param("b", root("0.4608212551057437875", {931, 204, -438, -36, 123, 0, -16})),
        param("c", root("0.4847751269560606253", {14776336, 0, -27743256, 0, 23442345, 0, -13991832, 0,
                                                   6473520, 0, -1772928, 0, 186624})),
        param("d", root("0.2798850500445166073", {3844, 2876, -127, -712, -196, 32, 16})),
        param("e", root("0.9216425102114875750", {931, 408, -1752, -288, 1968, 0, -1024})),
        param("f", root("0.5597701000890332145", {961, 1438, -127, -1424, -784, 256, 256})),
    };
    e.stated_height = root("0.8286479560382163503", {923521, 0, -3229188, 0, 4897830, 0, -3696996, 0, 1421793,
                                                     0, -272160, 0, 20736});
    e.stated_radius = root("0.5597701000890332145", {961, 1438, -127, -1424, -784, 256, 256});
    e.coplanar_cells = false;
  }
  {
    auto& e = add(16, PutativeGlobal, Radicals, "generic", 17, 32.8988127601, 32.898812);
    e.stated_height = closed("sqrt((30+3*sqrt(33))/67)", std::sqrt((30 + 3 * kS33) / 67));
    e.stated_radius = closed("sqrt((37-3*sqrt(33))/67)", std::sqrt((37 - 3 * kS33) / 67));
    e.coplanar_cells = false;
  }
  {
    auto& e = add(17, LocalMinimum, Decimals, "mirror17", 57, 32.0929327861, 32.092933);
    e.parameters = {
        param("a", decimal("0.86608122746771965")), param("b", decimal("0.83949269543107441")),
        param("c", decimal("0.22543699670001159")), param("d", decimal("0.49914255044053209")),
        param("e", decimal("0.45346284079516352")), param("f", decimal("0.57063884747292147")),
        param("g", decimal("0.71668538331661847")), param("h", decimal("0.072392150560195671")),
    };
    e.stated_height = decimal("0.84718746090720695");
    e.stated_radius = decimal("0.53129408624753173");
    e.coplanar_cells = false;
  }
  {
    auto& e = add(18, NeedsInvestigation, Decimals, "tri18", 38, 31.0132851551, 31.013172);
    e.parameters = {
        param("a", decimal("0.88869607772838093")), param("b", decimal("0.40536689571338645")),
        param("c", decimal("0.85189876064686144")), param("d", decimal("0.30143558361484884")),
        param("e", decimal("0.77266162426483545")), param("f", decimal("0.59487942737591607")),
        param("g", decimal("0.90957338356990010")), param("h", decimal("0.23290530593982136")),
    };
    e.stated_height = decimal("0.85704785593771583");
    e.stated_radius = decimal("0.51523681218694408");
    e.coplanar_cells = false;
    e.notes.push_back("the text quotes the earlier value as 30.013172 deg, the table as 31.013172 deg; the "
                      "table value is recorded");
  }
  {
    auto& e = add(19, NewLowerValue, Coordinates, "generic", 60, 30.3749090533, 30.382284);
    e.stated_height = decimal("0.86273518861681744");
    e.stated_radius = decimal("0.50565600394171572");
    e.coplanar_cells = false;
  }
  {
    auto& e = add(20, LocalMinimum, Decimals, "mirror20", 60, 29.6230957838, 29.623096);
    e.parameters = {
        param("a", decimal("0.98466920121574046")), param("b", decimal("0.71386205244040993")),
        param("c", decimal("0.66124112871569537")), param("d", decimal("0.62180774427385913")),
        param("e", decimal("0.42753669131692776")),
    };
    e.stated_height = decimal("0.86929575215271909");
    e.stated_radius = decimal("0.49429231765144638");
    e.coplanar_cells = false;
    e.notes.push_back("rows 12-13 print y = -sqrt(1-e^2); +sqrt(1-e^2) reproduces the stated radius");
  }
  {
    auto& e = add(22, PutativeGlobal, PolynomialRoots, "pent22", 19, 27.8100587699, 27.810059);
    e.parameters = {
        param("a", root("0.6919090810112949212", {95, 30, -55, -20, 25, -10, -1})),
        param("b", root("0.2231055241263849123", {9025, 0, -19550, 0, 15325, 0, -5035, 0, 615, 0, -40, 0, 1})),
        param("c", root("0.5840978452407353910", {9025, 0, -12550, 0, 8500, 0, -2885, 0, 465, 0, -35, 0, 1})),
        param("d", root("0.1677844402621232172", {25, -50, 75, -20, -25, 70, -11})),
        param("e", root("0.3046362789712863538", {625, 0, -1250, 0, 1750, 0, -925, 0, 225, 0, -25, 0, 1})),
        param("f", root("0.7975481325531225265", {625, 0, -2500, 0, 3625, 0, -1925, 0, 375, 0, -50, 0, 1})),
    };
    e.stated_height =
        root("0.8844990833734237006", {28745, 0, -35070, 0, 12895, 0, -2820, 0, 375, 0, -30, 0, 1});
    e.stated_radius =
        root("0.4665419289962835370", {28745, 0, -137400, 0, 268720, 0, -272960, 0, 149760, 0, -40960, 0, 4096});
  }
  {
    auto& e = add(32, PutativeGlobal, Radicals, "generic", 19, 22.6904803756, 22.690480);
    e.stated_height = root("0.9226021945439894676", {2245, 0, -2480, 0, 530, 0, -40, 0, 1});
    e.stated_radius = root("0.3857527584121915401", {2245, 0, -6500, 0, 6560, 0, -2560, 0, 256});
  }
  {
    auto& e = add(38, PutativeGlobal, PolynomialRoots, "tri38", 19, 21.0698583869, 21.069858);
    e.parameters = {
        param("a", root("0.7996599850609895832",
                        {107, -298, 1187, -312, 1110, 4356, -5346, -4536, 8991, 4374, -6561})),
        param("b", root("0.4056080372332561015", {1, -62, 1453, -16408, 100418, -364132, 932866, -1625336,
                                                   1928317, -1408590, 340881})),
        param("c", root("0.2282433142753381738",
                        {37, -118, 685, -1460, 1490, 4816, -4766, 12596, 17305, 2022, -1503})),
    };
    e.stated_height = root("0.9331427893809348476",
                           {2032489, 0, -8238102, 0, 22032105, 0, -37927368, 0, 43729362, 0, -36034308, 0,
                            20217114, 0, -5697864, 0, 312741, 0, -144342, 0, -19683});
    e.stated_radius = root("0.3595059590971591483",
                           {2032489, 0, -12086788, 0, 39351192, 0, -85656480, 0, 129958848, 0, -137851392, 0,
                            99597312, 0, -47652864, 0, 15433728, 0, -3407872, 0, 262144});
  }
  {
    auto& e = add(42, LocalMinimum, Numeric, "tri42", 10, 20.2572026800, 20.153842);
    static const char* kNames[20] = {"z1", "z2", "z3", "z4", "z5", "z6", "z7", "psi2", "psi3", "psi4",
                                     "psi5", "psi6", "psi7", "psi8", "psi9", "psi10", "psi11", "psi12",
                                     "psi13", "psi14"};
    static const char* kValues[20] = {
        "0.96493732521988285", "0.6256030535922561", "0.70849477764278967", "0.23976596877388581", "0.62560339600821835", "0.23976642394569311", "-0.16375618260148492", "-1.7291934492461816", "-3.1415899944541996", "0.71315622284759195", "1.7292076691931137", "-2.807541976183952", "-3.1415868226348884", "1.0472022328579034", "-0.68199121667616647", "-2.094387761718453", "1.7603548306206434", "2.7764099017631292", "-1.7603433684105625", "-2.0943904260932085"};
    for (int i = 0; i < 20; ++i) e.parameters.push_back(param(kNames[i], decimal(kValues[i])));
    e.coplanar_cells = false;
    e.notes.push_back("no coordinates are printed; the frozen parameters are the best converged 14-triangle "
                      "configuration found (20.8317266314 deg), not the table's 20.2572026800 deg one");
  }
  return out;
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> e = make_entries();
  return e;
}

std::vector<double> parameter_values(const CatalogEntry& e) {
  std::vector<double> v;
  for (const Parameter& p : e.parameters) {
    if (!p.value.polynomial) {
      v.push_back(p.value.value);
      continue;
    }
    try {
      v.push_back(refine_root(*p.value.polynomial, p.value.value).value);
    } catch (const NoRootNearby& err) {
      throw Error("n=" + std::to_string(e.n) + ": parameter " + p.name + ": " + err.what());
    }
  }
  return v;
}

std::vector<Vec3> table_points(std::size_t n, const std::vector<double>& p) {
  const double h = 0.5, r3 = kS3 / 2;
  switch (n) {
    case 2: return {{1, 0, 0}, {-1, 0, 0}};
    case 3: return {{1, 0, 0}, {-h, r3, 0}, {-h, -r3, 0}};
    case 4: {
      const double x = 2 * kS2 / 3, y = kS2 / 3, w = 2 / std::sqrt(6.0);
      return {{0, 0, 1}, {x, 0, -1.0 / 3}, {-y, w, -1.0 / 3}, {-y, -w, -1.0 / 3}};
    }
    case 5: return {{0, 0, 1}, {1, 0, 0}, {-h, r3, 0}, {-h, -r3, 0}, {0, 0, -1}};
    case 6: return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    case 7: {
      std::vector<Vec3> v{{0, 0, 1}, {0, 0, -1}};
      for (int k = 0; k < 5; ++k) {
        const double t = deg_to_rad(90.0 + 72.0 * k);
        v.emplace_back(std::cos(t), std::sin(t), 0);
      }
      v[2] = Vec3(0, 1, 0);
      return v;
    }
    case 8: {
      const double a = p[0], b = p[1], c = p[2], d = p[3];
      return {{-a, b, 0}, {-a, -b, 0}, {c, d, 0}, {a, 0, -b}, {-c, 0, d}, {a, 0, b}, {-c, 0, -d}, {c, -d, 0}};
    }
    case 10: {
      const double u = std::sqrt(std::sqrt(8.0) - 2), v = kS2 - 1, w = std::sqrt(kS2 - 1);
      return {{0, 0, 1}, {u, 0, v},   {0, u, v},   {-u, 0, v},   {0, -u, v},
              {w, w, -v}, {-w, w, -v}, {-w, -w, -v}, {w, -w, -v}, {0, 0, -1}};
    }
    case 12: {
      const double x = 1 / kS5, y1 = std::sqrt((5 + kS5) / 10), y2 = std::sqrt((5 - kS5) / 10);
      const double z1 = (5 - kS5) / 10, z2 = (5 + kS5) / 10;
      return {{1, 0, 0},     {x, 0, 2 * x}, {x, -y1, z1},  {x, -y2, -z2}, {x, y2, -z2},      {x, y1, z1},
              {-x, y2, z2},  {-x, -y2, z2}, {-x, -y1, -z1}, {-x, 0, -2 * x}, {-x, y1, -z1}, {-1, 0, 0}};
    }
    case 16: {
      const double a = std::sqrt(2.0 / 11), b = std::sqrt(6.0 / 11), c = std::sqrt(3.0 / 11);
      const double d = std::sqrt(2.0 / 33), e = std::sqrt(1.0 / 33), f = std::sqrt(2.0 / 3);
      return {{0, 0, 1},           {2 * a, 0, c},       {a, b, c},          {a, -b, c},
              {-2 * a, 0, c},      {-a, -b, c},         {-a, b, c},         {-2 * a, -2 * d, -e},
              {2 * a, -2 * d, -e}, {0, 4 * d, -e},      {0, -2 * kS2 / 3, -1.0 / 3}, {f, kS2 / 3, -1.0 / 3},
              {-f, kS2 / 3, -1.0 / 3}, {0, 2 * d, -5 * e}, {a, -d, -5 * e},   {-a, -d, -5 * e}};
    }
    case 19:
      return {{0, 0, 1},
              {0, 0.6349761541800811871, 0.7725317363206988435},
              {0.5054445214482143497, -0.5118504076083359682, 0.6946473896655524819},
              {-0.7581515192682984255, 0.1596157978684256165, 0.6322413074942168137},
              {-0.4234878603963508922, -0.6656837752201766543, 0.6144291200012692593},
              {0.8047489411172299238, 0.2607800469930158432, 0.5332662645067824403},
              {0.4723506300405221527, 0.8667489431614193441, 0.1600973198678991952},
              {-0.4912697990033500679, 0.8582706651730744570, 0.1484097365086817373},
              {0.2729225847858185526, -0.9535579251124018077, 0.1274384014697249313},
              {-0.8942840794753883523, -0.4466984223769217937, -0.02676760435351778201},
              {0.8984314716567872042, -0.4346451142101566152, -0.06248612189806215329},
              {-0.9586695281987397591, 0.2018315013174024181, -0.2005412196511457839},
              {-0.2926045265007563933, -0.9045898152807171949, -0.3099997696155048657},
              {0.8863416803125210279, 0.2644358420743626163, -0.3800948712718964430},
              {0.1494400093439340701, 0.8646336895501477554, -0.4796626590659143753},
              {0.4329709803299691077, -0.5421967394763222409, -0.7201102873125412109},
              {-0.4664477027156708823, 0.5036405554329888274, -0.7271676089832547174},
              {-0.4539608950401538617, -0.3346307578099949915, -0.8257976517899835280},
              {0.2994951172520864587, 0.1824399201425274308, -0.9364925788710486081}};
    case 32: {
      const double A = std::sqrt((3 - kS5) / 6), B = std::sqrt((3 + kS5) / 6);
      const double C = std::sqrt((5 - kS5) / 10), D = std::sqrt((5 + kS5) / 10), T = std::sqrt(1.0 / 3);
      return {{A, 0, B},   {-A, 0, B},   {0, C, D},    {0, -C, D},   {T, T, T},    {-T, T, T},  {T, -T, T},
              {-T, -T, T}, {D, 0, C},    {-D, 0, C},   {0, B, A},    {0, -B, A},   {-B, A, 0},  {-B, -A, 0},
              {-C, D, 0},  {-C, -D, 0},  {C, D, 0},    {C, -D, 0},   {B, A, 0},    {B, -A, 0},  {0, B, -A},
              {0, -B, -A}, {D, 0, -C},   {-D, 0, -C},  {T, T, -T},   {-T, T, -T},  {T, -T, -T}, {-T, -T, -T},
              {0, C, -D},  {0, -C, -D},  {A, 0, -B},   {-A, 0, -B}};
    }
  }
  throw NotInCatalog("no table construction for n=" + std::to_string(n));
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::PutativeGlobal: return "putative-global";
    case Status::LocalMinimum: return "local-minimum";
    case Status::NeedsInvestigation: return "needs-investigation";
    case Status::NewLowerValue: return "new-lower-value";
    case Status::Unresolved: return "unresolved";
  }
  return "?";
}

const char* to_string(Construction c) {
  switch (c) {
    case Construction::Radicals: return "radicals";
    case Construction::PolynomialRoots: return "polynomial-roots";
    case Construction::Decimals: return "decimals";
    case Construction::Coordinates: return "coordinates";
    case Construction::Numeric: return "numeric";
  }
  return "?";
}

const std::vector<std::size_t>& catalog_sizes() {
  static const std::vector<std::size_t> sizes = [] {
    std::vector<std::size_t> s;
    for (const CatalogEntry& e : entries()) s.push_back(e.n);
    return s;
  }();
  return sizes;
}

const CatalogEntry& catalog_entry(std::size_t n) {
  for (const CatalogEntry& e : entries())
    if (e.n == n) return e;
  throw NotInCatalog("n=" + std::to_string(n) + " is not in the catalog");
}

SphericalCode build_code(const CatalogEntry& entry) {
  const std::vector<double> p = parameter_values(entry);
  if (entry.scheme_id != "generic") {
    const SchemePtr s = named_scheme(entry.scheme_id);
    return params_to_code(*s, Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())));
  }
  return SphericalCode::from_vectors(table_points(entry.n, p));
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double radius_tolerance_deg(const CatalogEntry& entry) {
  switch (entry.construction) {
    case Construction::Radicals:
    case Construction::PolynomialRoots: return 5e-9;
    default: return 1e-8;
  }
}

double max_cell_deviation(const SphericalCode& code) {
  const VoronoiMesh m = mesh(code);
  double worst = 0.0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto cell = m.cell_points(i);
    worst = std::max(worst, fit_plane(cell, cell_centroid(cell)).max_deviation);
  }
  return worst;
}

VerificationReport verify_entry(const CatalogEntry& entry, double tol) {
  VerificationReport rep;
  rep.n = entry.n;
  auto add = [&](std::string name, bool ok, double residual, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, residual, std::move(detail)});
  };

  SphericalCode code;
  try {
    code = build_code(entry);
  } catch (const Error& e) {
    add("construction", false, 0.0, e.what());
    return rep;
  }
  add("construction", true, 0.0);

  double norm_err = 0.0, min_sep = kPi;
  for (std::size_t i = 0; i < code.size(); ++i) {
    norm_err = std::max(norm_err, std::abs(code[i].vec().norm() - 1.0));
    for (std::size_t j = i + 1; j < code.size(); ++j) min_sep = std::min(min_sep, angular_distance(code[i], code[j]));
  }
  add("unit norms", norm_err <= 1e-12, norm_err);
  add("distinct caps", min_sep > SphericalCode::kMinSeparation, min_sep);

  const CoveringResult cov = covering_radius(code);
  const double theta = cov.cap.angular_radius;
  const double deg_err = std::abs(rad_to_deg(theta) - entry.table_radius_deg);
  {
    std::ostringstream os;
    os.precision(12);
    os << "computed " << rad_to_deg(theta) << " deg, table " << entry.table_radius_deg << " deg";
    add("covering radius vs table", deg_err <= radius_tolerance_deg(entry), deg_err, os.str());
  }

  if (entry.stated_height && entry.stated_radius) {
    const double h = entry.stated_height->value, r = entry.stated_radius->value;
    const double e1 = std::abs(std::cos(theta) - h), e2 = std::abs(std::sin(theta) - r);
    add("cos(theta) = stated height", e1 <= tol, e1);
    add("sin(theta) = stated radius", e2 <= tol, e2);
    const double eq1 = std::abs(h * h + r * r - 1.0);
    const double eq1_tol = std::max(std::pow(10.0, 2 - entry.source_digits), 4e-16);
    add("h^2 + r^2 = 1", eq1 <= eq1_tol, eq1);
  }

  auto check_root = [&](const std::string& label, const StatedValue& v) {
    if (!v.polynomial) return;
    try {
      const RootApprox ra = refine_root(*v.polynomial, v.value);
      const double rel = ra.residual / v.polynomial->scale(ra.value);
      const double gap = std::abs(ra.value - v.value);
      add("polynomial root " + label, rel < kRootTol && gap < 1e-15, rel,
          "refined " + std::to_string(ra.value));
    } catch (const NoRootNearby& e) {
      add("polynomial root " + label, false, 0.0, e.what());
    }
  };
  for (const Parameter& p : entry.parameters) check_root(p.name, p.value);
  if (entry.stated_height) check_root("height", *entry.stated_height);
  if (entry.stated_radius) check_root("radius", *entry.stated_radius);

  if (!is_rank_deficient(code)) {
    const VoronoiMesh m = mesh(code);
    std::size_t min_inc = code.size();
    for (const auto& v : m.vertices) min_inc = std::min(min_inc, v.caps.size());
    add("vertex incidence >= 3", min_inc >= 3, static_cast<double>(min_inc));
    const double dev = max_cell_deviation(code);
    if (entry.coplanar_cells)
      add("cell vertices coplanar", dev < tol, dev);
    else
      add("cell vertices coplanar (recorded: not coplanar)", dev >= tol, dev);
  }
  return rep;
}

std::vector<CrossCheckRow> cross_check_table() {
  std::vector<CrossCheckRow> rows;
  for (const CatalogEntry& e : entries()) {
    CrossCheckRow r;
    r.n = e.n;
    r.reference_deg = e.reference_radius_deg;
    r.table_deg = e.table_radius_deg;
    r.computed_deg = rad_to_deg(covering_radius(build_code(e)).cap.angular_radius);
    r.status = e.status;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace spcover
