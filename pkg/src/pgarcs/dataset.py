"""Reference dataset: smallest known complete-arc sizes per plane order.

Rows carry the published record (size plus whichever derived columns the
source section printed); metrics recomputes every derived column and
flags any disagreement.  Source tags name the dataset section a value
sits in: T1 and T2 are the two main bands (sizes below 4.5*sqrt(q) and
below 5*sqrt(q)), T3 holds large orders with scaled-size columns, and
inline is a single extra value.

Transcription layout note: each _T*_BLOCK* list below is one column
block of the source layout, top to bottom; blocks concatenate to a
strictly increasing q sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional


@dataclass(frozen=True)
class KnownSizeRecord:
    q: int
    t_bar: int
    source: str  # T1 | T2 | T3 | inline


@dataclass(frozen=True)
class PublishedRow:
    q: int
    t_bar: int
    source: str
    slack_45: Optional[int] = None      # floor(4.5*sqrt(q) - t), where printed
    slack_5: Optional[int] = None       # floor(5*sqrt(q) - t), where printed
    sqrt_ratio: Optional[str] = None    # t/sqrt(q) rounded up at 2 decimals
    log_ratio_1: Optional[str] = None   # t/(sqrt(q)*log2(q)), as printed
    log_ratio_half: Optional[str] = None
    log_ratio_075: Optional[str] = None


# sizes below 4.5*sqrt(q): (q, t_bar, slack_45, sqrt_ratio)

_T1_BLOCK1 = [
    (853, 118, 13, "4.05"), (857, 119, 12, "4.07"), (859, 119, 12, "4.07"),
    (863, 119, 13, "4.06"), (877, 120, 13, "4.06"), (881, 121, 12, "4.08"),
    (883, 121, 12, "4.08"), (887, 121, 13, "4.07"), (907, 123, 12, "4.09"),
    (911, 123, 12, "4.08"), (919, 124, 12, "4.10"), (929, 125, 12, "4.11"),
    (937, 126, 11, "4.12"), (941, 126, 12, "4.11"), (947, 127, 11, "4.13"),
    (953, 127, 11, "4.12"), (961, 120, 19, "3.88"), (967, 128, 11, "4.12"),
    (971, 128, 12, "4.11"), (977, 129, 11, "4.13"), (983, 129, 12, "4.12"),
    (991, 130, 11, "4.13"), (997, 130, 12, "4.12"), (1009, 132, 10, "4.16"),
    (1013, 131, 12, "4.12"), (1019, 132, 11, "4.14"), (1021, 132, 11, "4.14"),
    (1024, 124, 20, "3.88"), (1031, 132, 12, "4.12"), (1033, 133, 11, "4.14"),
    (1039, 134, 11, "4.16"), (1049, 134, 11, "4.14"), (1051, 135, 10, "4.17"),
    (1061, 135, 11, "4.15"), (1063, 136, 10, "4.18"), (1069, 136, 11, "4.16"),
]

_T1_BLOCK2 = [
    (1087, 137, 11, "4.16"), (1091, 138, 10, "4.18"), (1093, 138, 10, "4.18"),
    (1097, 138, 11, "4.17"), (1103, 138, 11, "4.16"), (1109, 138, 11, "4.15"),
    (1117, 140, 10, "4.19"), (1123, 139, 11, "4.15"), (1129, 140, 11, "4.17"),
    (1151, 142, 10, "4.19"), (1153, 142, 10, "4.19"), (1163, 143, 10, "4.20"),
    (1171, 144, 9, "4.21"), (1181, 144, 10, "4.20"), (1187, 145, 10, "4.21"),
    (1193, 145, 10, "4.20"), (1201, 146, 9, "4.22"), (1213, 147, 9, "4.23"),
    (1217, 147, 9, "4.22"), (1223, 147, 10, "4.21"), (1229, 148, 9, "4.23"),
    (1231, 148, 9, "4.22"), (1237, 148, 10, "4.21"), (1249, 149, 10, "4.22"),
    (1259, 150, 9, "4.23"), (1277, 151, 9, "4.23"), (1279, 151, 9, "4.23"),
    (1283, 152, 9, "4.25"), (1289, 152, 9, "4.24"), (1291, 152, 9, "4.24"),
    (1297, 153, 9, "4.25"), (1301, 153, 9, "4.25"), (1303, 153, 9, "4.24"),
    (1307, 153, 9, "4.24"), (1319, 154, 9, "4.25"), (1321, 154, 9, "4.24"),
]

_T1_BLOCK3 = [
    (1327, 155, 8, "4.26"), (1331, 155, 9, "4.25"), (1361, 157, 9, "4.26"),
    (1367, 158, 8, "4.28"), (1369, 144, 22, "3.90"), (1373, 158, 8, "4.27"),
    (1381, 159, 8, "4.28"), (1399, 160, 8, "4.28"), (1409, 160, 8, "4.27"),
    (1423, 161, 8, "4.27"), (1427, 162, 7, "4.29"), (1429, 161, 9, "4.26"),
    (1433, 161, 9, "4.26"), (1439, 161, 9, "4.25"), (1447, 162, 9, "4.26"),
    (1451, 163, 8, "4.28"), (1453, 164, 7, "4.31"), (1459, 164, 7, "4.30"),
    (1471, 164, 8, "4.28"), (1481, 164, 9, "4.27"), (1483, 165, 8, "4.29"),
    (1487, 166, 7, "4.31"), (1489, 166, 7, "4.31"), (1493, 166, 7, "4.30"),
    (1499, 166, 8, "4.29"), (1511, 166, 8, "4.28"), (1523, 168, 7, "4.31"),
    (1531, 169, 7, "4.32"), (1543, 169, 7, "4.31"), (1549, 170, 7, "4.32"),
    (1553, 170, 7, "4.32"), (1559, 170, 7, "4.31"), (1567, 171, 7, "4.32"),
    (1571, 171, 7, "4.32"), (1579, 172, 6, "4.33"), (1583, 172, 7, "4.33"),
]

_T1_BLOCK4 = [
    (1597, 173, 6, "4.33"), (1601, 173, 7, "4.33"), (1607, 174, 6, "4.35"),
    (1609, 174, 6, "4.34"), (1613, 174, 6, "4.34"), (1619, 174, 7, "4.33"),
    (1621, 174, 7, "4.33"), (1627, 175, 6, "4.34"), (1637, 176, 6, "4.35"),
    (1657, 177, 6, "4.35"), (1663, 177, 6, "4.35"), (1667, 177, 6, "4.34"),
    (1669, 177, 6, "4.34"), (1681, 160, 24, "3.91"), (1693, 179, 6, "4.36"),
    (1697, 180, 5, "4.37"), (1699, 179, 6, "4.35"), (1709, 180, 6, "4.36"),
    (1721, 181, 5, "4.37"), (1723, 181, 5, "4.37"), (1733, 182, 5, "4.38"),
    (1741, 182, 5, "4.37"), (1747, 182, 6, "4.36"), (1753, 183, 5, "4.38"),
    (1759, 183, 5, "4.37"), (1777, 184, 5, "4.37"), (1783, 183, 7, "4.34"),
    (1787, 185, 5, "4.38"), (1789, 185, 5, "4.38"), (1801, 186, 4, "4.39"),
    (1811, 187, 4, "4.40"), (1823, 187, 5, "4.38"), (1831, 188, 4, "4.40"),
    (1847, 189, 4, "4.40"), (1849, 189, 4, "4.40"), (1861, 190, 4, "4.41"),
]

_T1_BLOCK5 = [
    (1867, 190, 4, "4.40"), (1871, 191, 3, "4.42"), (1873, 191, 3, "4.42"),
    (1877, 191, 3, "4.41"), (1879, 191, 4, "4.41"), (1889, 191, 4, "4.40"),
    (1901, 191, 5, "4.39"), (1907, 192, 4, "4.40"), (1913, 192, 4, "4.39"),
    (1931, 194, 3, "4.42"), (1933, 194, 3, "4.42"), (1949, 194, 4, "4.40"),
    (1951, 195, 3, "4.42"), (1973, 196, 3, "4.42"), (1979, 196, 4, "4.41"),
    (1987, 197, 3, "4.42"), (1993, 196, 4, "4.40"), (1997, 198, 3, "4.44"),
    (1999, 198, 3, "4.43"), (2003, 198, 3, "4.43"), (2011, 199, 2, "4.44"),
    (2017, 199, 3, "4.44"), (2027, 199, 3, "4.43"), (2029, 200, 2, "4.45"),
    (2039, 201, 2, "4.46"), (2048, 201, 2, "4.45"), (2053, 201, 2, "4.44"),
    (2063, 202, 2, "4.45"), (2069, 202, 2, "4.45"), (2081, 203, 2, "4.45"),
    (2083, 203, 2, "4.45"), (2087, 203, 2, "4.45"), (2089, 203, 2, "4.45"),
    (2099, 204, 2, "4.46"), (2111, 205, 1, "4.47"), (2113, 205, 1, "4.46"),
]

_T1_BLOCK6 = [
    (2129, 206, 1, "4.47"), (2131, 206, 1, "4.47"), (2137, 206, 2, "4.46"),
    (2141, 206, 2, "4.46"), (2143, 207, 1, "4.48"), (2153, 207, 1, "4.47"),
    (2161, 207, 2, "4.46"), (2179, 209, 1, "4.48"), (2187, 209, 1, "4.47"),
    (2197, 208, 2, "4.44"), (2203, 209, 2, "4.46"), (2207, 210, 1, "4.48"),
    (2209, 210, 1, "4.47"), (2213, 210, 1, "4.47"), (2221, 210, 2, "4.46"),
    (2237, 211, 1, "4.47"), (2239, 211, 1, "4.46"), (2243, 211, 2, "4.46"),
    (2251, 212, 1, "4.47"), (2267, 213, 1, "4.48"), (2269, 213, 1, "4.48"),
    (2273, 214, 0, "4.49"), (2281, 214, 0, "4.49"), (2287, 215, 0, "4.50"),
    (2293, 215, 0, "4.49"), (2297, 215, 0, "4.49"), (2309, 215, 1, "4.48"),
    (2311, 216, 0, "4.50"), (2333, 217, 0, "4.50"), (2339, 217, 0, "4.49"),
    (2341, 217, 0, "4.49"), (2347, 218, 0, "4.50"), (2351, 218, 0, "4.50"),
    (2357, 218, 0, "4.50"), (2371, 218, 1, "4.48"), (2377, 219, 0, "4.50"),
]

# sizes between 4.5*sqrt(q) and 5*sqrt(q) (three exceptions below 4.5):
# first block (q, t_bar, slack_45 or None, slack_5, sqrt_ratio); the other
# blocks carry no slack_45 column at all

_T2_BLOCK1 = [
    (2381, 220, None, 23, "4.51"), (2383, 220, None, 24, "4.51"),
    (2389, 220, None, 24, "4.51"), (2393, 221, None, 23, "4.52"),
    (2399, 221, None, 23, "4.52"), (2401, 192, 28, 53, "3.92"),
    (2411, 221, None, 24, "4.51"), (2417, 221, 0, 24, "4.50"),
    (2423, 222, None, 24, "4.51"), (2437, 222, 0, 24, "4.50"),
    (2441, 223, None, 24, "4.52"), (2447, 223, None, 24, "4.51"),
    (2459, 224, None, 23, "4.52"), (2467, 224, None, 24, "4.51"),
    (2473, 225, None, 23, "4.53"), (2477, 225, None, 23, "4.53"),
    (2503, 227, None, 23, "4.54"), (2521, 227, None, 24, "4.53"),
    (2531, 227, None, 24, "4.52"), (2539, 228, None, 23, "4.53"),
    (2543, 228, None, 24, "4.53"), (2549, 229, None, 23, "4.54"),
]

_T2_BLOCK2 = [
    (2551, 229, 23, "4.54"), (2557, 229, 23, "4.53"), (2579, 230, 23, "4.53"),
    (2591, 231, 23, "4.54"), (2593, 231, 23, "4.54"), (2609, 232, 23, "4.55"),
    (2617, 233, 22, "4.56"), (2621, 233, 22, "4.56"), (2633, 232, 24, "4.53"),
    (2647, 234, 23, "4.55"), (2657, 233, 24, "4.53"), (2659, 233, 24, "4.52"),
    (2663, 235, 23, "4.56"), (2671, 236, 22, "4.57"), (2677, 236, 22, "4.57"),
    (2683, 236, 22, "4.56"), (2687, 236, 23, "4.56"), (2689, 236, 23, "4.56"),
    (2693, 237, 22, "4.57"), (2699, 237, 22, "4.57"), (2707, 237, 23, "4.56"),
    (2711, 237, 23, "4.56"),
]

_T2_BLOCK3 = [
    (2713, 237, 23, "4.56"), (2719, 238, 22, "4.57"), (2729, 238, 23, "4.56"),
    (2731, 238, 23, "4.56"), (2741, 239, 22, "4.57"), (2749, 239, 23, "4.56"),
    (2753, 239, 23, "4.56"), (2767, 241, 22, "4.59"), (2777, 241, 22, "4.58"),
    (2789, 241, 23, "4.57"), (2791, 242, 22, "4.59"), (2797, 241, 23, "4.56"),
    (2801, 242, 22, "4.58"), (2803, 242, 22, "4.58"), (2809, 242, 23, "4.57"),
    (2819, 242, 23, "4.56"), (2833, 243, 23, "4.57"), (2837, 244, 22, "4.59"),
    (2843, 244, 22, "4.58"), (2851, 244, 22, "4.57"), (2857, 245, 22, "4.59"),
    (2861, 245, 22, "4.59"), (2879, 245, 23, "4.57"),
]

# large orders: (q, t_bar, slack_5, sqrt_ratio, log_ratio_1,
#                log_ratio_half, log_ratio_075)

_T3_ROWS = [
    (3511, 278, 18, "4.70", "0.398", "1.367", "0.7380"),
    (4096, 302, 18, "4.72", "0.393", "1.362", "0.7319"),
    (4523, 322, 14, "4.79", "0.394", "1.374", "0.7360"),
    (5003, 341, 12, "4.83", "0.392", "1.375", "0.7345"),
    (5347, 353, 12, "4.83", "0.390", "1.372", "0.7312"),
    (5641, 364, 11, "4.85", "0.389", "1.373", "0.7307"),
    (5843, 373, 9, "4.88", "0.390", "1.379", "0.7335"),
    (6011, 377, 10, "4.87", "0.387", "1.372", "0.7291"),
]

_INLINE_ROWS = [(343, 66)]

# orders excluded from the banded range claims and the plot series
# (the squares/high powers whose sizes come from algebraic constructions)
EXCLUDED_ORDERS = frozenset({625, 729, 841, 961, 1024, 1369, 1681, 2401})


def _build() -> list[PublishedRow]:
    rows: list[PublishedRow] = []
    for q, t in _INLINE_ROWS:
        rows.append(PublishedRow(q, t, "inline"))
    for blk in (_T1_BLOCK1, _T1_BLOCK2, _T1_BLOCK3,
                _T1_BLOCK4, _T1_BLOCK5, _T1_BLOCK6):
        for q, t, a, b in blk:
            rows.append(PublishedRow(q, t, "T1", slack_45=a, sqrt_ratio=b))
    for q, t, a, c, b in _T2_BLOCK1:
        rows.append(PublishedRow(q, t, "T2", slack_45=a, slack_5=c, sqrt_ratio=b))
    for blk in (_T2_BLOCK2, _T2_BLOCK3):
        for q, t, c, b in blk:
            rows.append(PublishedRow(q, t, "T2", slack_5=c, sqrt_ratio=b))
    for q, t, c, b, d1, dh, d75 in _T3_ROWS:
        rows.append(PublishedRow(q, t, "T3", slack_5=c, sqrt_ratio=b,
                                 log_ratio_1=d1, log_ratio_half=dh,
                                 log_ratio_075=d75))
    rows.sort(key=lambda r: r.q)
    for a, b in zip(rows, rows[1:]):
        if a.q >= b.q:
            raise AssertionError(f"dataset q values not strictly increasing at {b.q}")
    return rows


_ROWS = _build()


def dataset() -> list[PublishedRow]:
    """All published rows, strictly increasing in q."""
    return list(_ROWS)


def known_sizes() -> list[KnownSizeRecord]:
    """The (q, smallest known size, source) triples."""
    return [KnownSizeRecord(r.q, r.t_bar, r.source) for r in _ROWS]


def row_for(q: int) -> PublishedRow:
    for r in _ROWS:
        if r.q == q:
            return r
    raise KeyError(f"no dataset row for q={q}")


def fixture_text() -> str:
    """The rows in the audit fixture format: q<TAB>t_bar<TAB>source."""
    return "".join(f"{r.q}\t{r.t_bar}\t{r.source}\n" for r in _ROWS)


def load_fixture() -> list[KnownSizeRecord]:
    """Parse the packaged TSV fixture (mirrors the embedded rows)."""
    text = resources.files("pgarcs").joinpath("data/known_sizes.tsv").read_text()
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        q, t, source = line.split("\t")
        out.append(KnownSizeRecord(int(q), int(t), source))
    return out
