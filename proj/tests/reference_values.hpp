#pragma once

// Reference digits from closed forms (Gamma values, complete elliptic
// integral E) evaluated at 80 digits with mpmath, independent of the series
// and iteration code under test.
namespace replica::reference {

inline constexpr const char* kInvPi =
    "0.31830988618379067153776752674502872406891929148091289749533468811779359526845307";
inline constexpr const char* kPi =
    "3.1415926535897932384626433832795028841971693993751058209749445923078164062862090";
inline constexpr const char* kCoupleHalfS0 =  // sqrt(pi) / Gamma(3/4)^2
    "1.1803405990160962260453379405584885872337166348814472995158643994043041807207158";
inline constexpr const char* kCoupleHalfS1 =  // Gamma(3/4)^2 / pi^(3/2)
    "0.26967630059418967833396786117777636638293448272152006516997331593194149424325784";
inline constexpr const char* kSqrt3Over2Pi =
    "0.2756644477108960247556632491564847206986932401833203263996830101455151517346349";
inline constexpr const char* kCoupleThirdW2 =  // 2^(-1/3) / Gamma(2/3)^3
    "0.31965918883578034750773734187759375232798660442895020747822413833636776854884181";
inline constexpr const char* kCoupleHalfWThird =
    "0.285000243054567476121484945015317618785524773696378071735867609757049104545560";
inline constexpr const char* kCoupleHalfWHalf =
    "0.292985720724751767136677911684543592475576915645446737257504371203175582699436";
inline constexpr const char* kCoupleHalfW2 =
    "0.37571408173092089321398086052571936716171234226913675242264568773887023031669586";
inline constexpr const char* kCoupleHalfW3 =  // 1 / Gamma(3/4)^4
    "0.4434705842890577027057626806772607693432499598212991741549304949065891279740964";
inline constexpr const char* kCoupleThirdWThird =
    "0.24975247630370678414662208474738253230608858967094032107272827690051792381856596";
inline constexpr const char* kCoupleThirdWHalf =
    "0.25599267702102785668686591021205683425337725538096387677420133997049365089843565";
inline constexpr const char* kCoupleThirdW3 =
    "0.37067528241549950188364215849981757218124777530033719026371237279767281572818552";
inline constexpr const char* kEllipseFactor21 =  // P(2,1) / pi
    "3.0839288503800800729000364651552209896814059270218745853751257672403246405162884";
inline constexpr const char* kPerimeter21 =  // 8 E(3/4)
    "9.6884482205476761984285031963918294119539183978866008250831163524621206459625521";
inline constexpr const char* kGamma14 = "3.625609908221908311930685155867672002995167682880065467433377999569919";
inline constexpr const char* kGamma34 = "1.225416702465177645129098303362890526851239248108070611230118938289823";
inline constexpr const char* kGamma13 = "2.678938534707747633655692940974677644128689377957301100950428327590418";
inline constexpr const char* kGamma23 = "1.354117939426400416945288028154513785519327266056793698394022467963783";
inline constexpr const char* kQuadFirstA =  // 20 sqrt(2) - 28
    "0.2842712474619009760337744841939615713934375075389614635335947598146495692421408";
inline constexpr const char* kThreeMinus2Sqrt2 =
    "0.17157287525380990239662255158060384286065624924610385364664052401853504307578592";
inline constexpr const char* kCubicDescendCbrtHalf =
    "0.079732314346464056434814672585244532224702880450948885106699338745614854221109938";
inline constexpr const char* kQuarticDescendFourthRootHalf =
    "0.086427233725889792043875602365584746393262516399123277062450682642832600654770799";

}  // namespace replica::reference
