#include "hauptmodul/reference_tables.hpp"

#include "hauptmodul/errors.hpp"

#include <sstream>

namespace hm::reference {

namespace {

const std::vector<TableRow> rows2 = {
    {-4, 0, -2, 0, -4},
    {-1, -1, -1, -1, -1},
    {0, 1, 5, 2, 10},
    {4, -26, 518, -52, 1036},
    {7, -23, -8215, -23, -8215},
    {8, 76, 7180, 152, 14360},
    {12, -248, 52760, -496, 105520},
    {15, -1, -385025, -1, -385025},
    {16, 518, 287710, 1036, 575420},
    {20, -1128, 1263640, -2256, 2527280},
    {23, -94, -6987870, -94, -6987870},
    {24, 2200, 4831256, 4400, 9662512},
    {28, -4096, 16572370, -8192, 33144740},
    {31, 93, -78987171, 93, -78987171},
    {32, 7180, 52263100, 14360, 104526200},
    {36, -12418, 153553438, -24836, 307106876},
    {39, -236, -663068908, -236, -663068908},
    {40, 20632, 425670680, 41264, 851341360},
    {44, -33512, 1122593352, -67024, 2245186704},
    {47, 235, -4515675925, 235, -4515675925},
    {48, 53256, 2835914280, 106512, 5671828560},
};

const std::vector<TableRow> rows3 = {
    {-4, 0, -2, 0, -2},
    {-1, -1, -1, -1, -1},
    {0, 1, 3, 2, 6},
    {3, -7, 33, -14, 66},
    {8, -34, -410, -34, -410},
    {11, 22, -1082, 22, -1082},
    {12, 26, 1428, 52, 2856},
    {15, -69, 3195, -138, 6390},
    {20, -116, -11892, -116, -11892},
    {23, 115, -22797, 115, -22797},
    {24, 174, 28710, 348, 57420},
    {27, -241, 53223, -482, 106446},
    {32, -410, -140222, -410, -140222},
    {35, 492, -240500, 492, -240500},
    {36, 492, 287244, 984, 574488},
    {39, -705, 477567, -1410, 955134},
    {44, -1060, -1081096, -1060, -1081096},
    {47, 1272, -1718792, 1272, -1718792},
    {48, 1442, 2004918, 2884, 4009836},
};

const std::vector<TableRow> rows5 = {
    {-4, 0, -2, 0, -2},
    {-1, -1, -1, -1, -1},
    {0, 1, 3, 2, 6},
    {4, -8, -6, -8, -6},
    {11, -12, -124, -12, -124},
    {15, -19, 93, -38, 186},
    {16, -6, -270, -6, -270},
    {19, 20, 132, 20, 132},
    {20, 6, 268, 12, 536},
    {24, -44, 216, -44, 216},
    {31, -39, -1863, -39, -1863},
    {35, -44, 1668, -88, 3336},
    {36, 20, -3054, 20, -3054},
    {39, 53, 1653, 53, 1653},
    {40, 56, 2868, 112, 5736},
    {44, -136, 2416, -136, 2416},
};

const std::vector<ExpansionHead> heads = {
    {2, false, 276, -2048, 11202},   {2, true, 4372, 96256, 1240002},
    {3, false, 54, -76, -243},       {3, true, 783, 8672, 65367},
    {5, false, 9, 10, -30},          {5, true, 134, 760, 3345},
};

} // namespace

const std::vector<TableRow> &trace_rows(int p) {
  switch (p) {
  case 2:
    return rows2;
  case 3:
    return rows3;
  case 5:
    return rows5;
  default:
    throw domain_error("no reference trace table for p=" + std::to_string(p));
  }
}

std::string trace_csv(int p) {
  std::ostringstream os;
  os << "d,t1_star,t2_star,t1,t2\n";
  for (const TableRow &r : trace_rows(p))
    os << r.d << "," << r.t1_star << "," << r.t2_star << "," << r.t1 << ","
       << r.t2 << "\n";
  return os.str();
}

const std::vector<ExpansionHead> &expansion_heads() { return heads; }

} // namespace hm::reference
