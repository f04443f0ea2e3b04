// Auto-generated by tools/gen_reference_values.py -- do not edit by hand.
// High-precision reference values (mpmath, 60 digits) for math-function tests.
#pragma once

namespace refval {

struct CdfPair { double x; double value; };

inline constexpr CdfPair kStdNormalCdf[] = {
    {-8.0, 6.220960574271784123516e-16},
    {-6.0, 9.865876450376981407009e-10},
    {-2.0, 0.02275013194817920720028},
    {-0.75, 0.2266273523768681993271},
    {-0.1, 0.4601721627229710185346},
    {0.0, 0.5000000000000000000000},
    {0.1, 0.5398278372770289814654},
    {0.5, 0.6914624612740131036377},
    {1.0, 0.8413447460685429485852},
    {1.1774, 0.8804820550608587054965},
    {2.0, 0.9772498680518207927997},
    {2.5758, 0.9949995762622213171986},
    {3.0, 0.9986501019683699054733},
    {5.0, 0.9999997133484281208061},
    {8.0, 0.9999999999999993779039},
};

inline constexpr CdfPair kStdNormalQuantile[] = {
    {1.0e-12, -7.034483825301131929810},
    {1.0e-8, -5.612001244174788731550},
    {0.005, -2.575829303548900760979},
    {0.025, -1.959963984540054235525},
    {0.1, -1.281551565544600466965},
    {0.3, -0.5244005127080407840383},
    {0.5, 0.0},
    {0.75, 0.6744897501960817432022},
    {0.84134474606854295, 1.000000000000000000000},
    {0.975, 1.959963984540054235525},
    {0.995, 2.575829303548900760979},
    {0.9999, 3.719016485455680564394},
    {0.99999999, 5.612001244174788731550},
};

struct TTriple { double x; double dof; double value; };

inline constexpr TTriple kStudentTCdf[] = {
    {1.0, 1.0, 0.7500000000000000000000},
    {2.0, 2.0, 0.9082482904638630163662},
    {1.5, 5.0, 0.9030481598787632839336},
    {-2.3, 14.58, 0.01833873360968928141471},
    {2.0, 456.58, 0.9769539358422055188379},
    {0.5, 0.5, 0.6213409635352816843296},
    {3.0, 30.0, 0.9973050179671740266936},
    {-1.0, 100.0, 0.1598620778920616802002},
    {2.5758, 1000000.0, 0.9949995051668484178359},
    {-0.183, 9.0, 0.4294270630262050347302},
    {0.0, 3.7, 0.5000000000000000000000},
};

inline constexpr TTriple kStudentTPdf[] = {
    {0.0, 1.0, 0.3183098861837906715378},
    {1.0, 2.0, 0.1924500897298752548364},
    {-2.5, 14.58, 0.02435290756636304978338},
    {0.5, 456.58, 0.3517883466133461390292},
    {3.0, 22.0, 0.007641488200965357752367},
};

struct GammaQuad { double x; double shape; double rate; double value; };

inline constexpr GammaQuad kGammaCdf[] = {
    {1.0, 1.0, 1.0, 0.6321205588285576784045},
    {0.2, 0.3, 1.0, 0.6575067242697217163120},
    {6.5, 7.29, 1.0, 0.4290031771252835416948},
    {200.0, 215.5, 1.0, 0.1446977525706557403279},
    {4.0, 2.5, 2.5, 0.9987502694369686245881},
    {80.0, 100.0, 1.0, 0.01710831303513311416588},
    {0.5, 7.29, 3.0, 0.0005730187236991321984630},
    {1300.0, 228.29, 0.17, 0.3207524316219064171935},
};

inline constexpr GammaQuad kGammaQuantile[] = {
    {0.995, 7.29, 1.0, 16.09047554664823455957},
    {0.63212055882855768, 1.0, 1.0, 1.000000000000000000000},
    {0.5, 100.0, 1.0, 99.66686491931548874369},
    {0.005, 7.29, 1.0, 2.188988859951980420569},
    {0.975, 2.0, 4.0, 1.392910847734724649307},
};

inline constexpr TTriple kChiSqUpperTail[] = {
    {12.879, 11.0, 0.3013074631869361575130},
    {328.29, 11.0, 0.0},
    {19.675, 11.0, 0.05000206180091303380412},
};

}  // namespace refval
