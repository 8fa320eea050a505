//! Equal-probability standard-Gaussian breakpoints for SAX quantization.

use std::sync::OnceLock;

/// Highest supported bits per symbol (cardinality 256).
pub const MAX_BITS: u8 = 8;

const FULL: usize = 1 << MAX_BITS;

/// Inverse of the standard normal CDF (Wichura's AS241, PPND16).
///
/// Accurate to about 1e-16 over `(0, 1)`.
#[allow(clippy::excessive_precision)] // coefficients as published
pub fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 8] = [
        3.387_132_872_796_366_608,
        1.331_416_678_917_843_774_5e2,
        1.971_590_950_306_551_442_7e3,
        1.373_169_376_550_946_112_5e4,
        4.592_195_393_154_987_145_7e4,
        6.726_577_092_700_870_085_3e4,
        3.343_057_558_358_812_810_5e4,
        2.509_080_928_730_122_672_7e3,
    ];
    const B: [f64; 8] = [
        1.0,
        4.231_333_070_160_091_125_2e1,
        6.871_870_074_920_579_083e2,
        5.394_196_021_424_751_107_7e3,
        2.121_379_430_158_659_586_7e4,
        3.930_789_580_009_271_061e4,
        2.872_908_573_572_194_267_4e4,
        5.226_495_278_852_854_561e3,
    ];
    const C: [f64; 8] = [
        1.423_437_110_749_683_577_34,
        4.630_337_846_156_545_295_9,
        5.769_497_221_460_691_405_5,
        3.647_848_324_763_204_605_04,
        1.270_458_252_452_368_382_58,
        2.417_807_251_774_506_117_7e-1,
        2.272_384_498_926_918_458_33e-2,
        7.745_450_142_783_414_076_4e-4,
    ];
    const D: [f64; 8] = [
        1.0,
        2.053_191_626_637_758_821_87,
        1.676_384_830_183_803_849_4,
        6.897_673_349_851_000_045_5e-1,
        1.481_039_764_274_800_745_9e-1,
        1.519_866_656_361_645_719_66e-2,
        5.475_938_084_995_344_946e-4,
        1.050_750_071_644_416_843_24e-9,
    ];
    const E: [f64; 8] = [
        6.657_904_643_501_103_777_2,
        5.463_784_911_164_114_369_9,
        1.784_826_539_917_291_335_8,
        2.965_605_718_285_048_912_3e-1,
        2.653_218_952_657_612_309_3e-2,
        1.242_660_947_388_078_438_6e-3,
        2.711_555_568_743_487_578_15e-5,
        2.010_334_399_292_288_132_65e-7,
    ];
    const F: [f64; 8] = [
        1.0,
        5.998_322_065_558_879_376_9e-1,
        1.369_298_809_227_358_053_1e-1,
        1.487_536_129_085_061_485_25e-2,
        7.868_691_311_456_132_591e-4,
        1.846_318_317_510_054_681_8e-5,
        1.421_511_758_316_445_888_7e-7,
        2.044_263_103_389_939_785_64e-15,
    ];

    fn poly(coeffs: &[f64; 8], x: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let r = (-(p.min(1.0 - p)).ln()).sqrt();
    let x = if r <= 5.0 {
        let r = r - 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        let r = r - 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -x
    } else {
        x
    }
}

/// The 255 quantiles `Φ⁻¹(k / 256)`; coarser cardinalities use every
/// `2^(8 - b)`-th entry, so regions nest exactly across cardinalities.
fn table() -> &'static [f64; FULL - 1] {
    static TABLE: OnceLock<[f64; FULL - 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; FULL - 1];
        for (k, slot) in t.iter_mut().enumerate() {
            *slot = inverse_normal_cdf((k + 1) as f64 / FULL as f64);
        }
        t
    })
}

/// Breakpoint `k` (0-based, `k < 2^bits - 1`) at the given cardinality.
#[inline]
fn at(k: usize, bits: u8) -> f64 {
    table()[((k + 1) << (MAX_BITS - bits)) - 1]
}

/// Ascending breakpoints for `bits` in `1..=8`.
pub fn breakpoints(bits: u8) -> Vec<f64> {
    assert!((1..=MAX_BITS).contains(&bits), "bits must be in 1..=8");
    (0..(1usize << bits) - 1).map(|k| at(k, bits)).collect()
}

/// Symbol of `value` at `bits` of cardinality. A value equal to a breakpoint
/// maps to the higher symbol.
#[inline]
pub fn symbolize(value: f64, bits: u8) -> u8 {
    let full = table().partition_point(|&bp| bp <= value);
    (full >> (MAX_BITS - bits)) as u8
}

/// `[lower, upper)` bounds of `symbol` at `bits`; `bits == 0` is the whole line.
#[inline]
pub fn region(symbol: u8, bits: u8) -> (f64, f64) {
    if bits == 0 {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let s = symbol as usize;
    let last = (1usize << bits) - 1;
    let lower = if s == 0 { f64::NEG_INFINITY } else { at(s - 1, bits) };
    let upper = if s >= last { f64::INFINITY } else { at(s, bits) };
    (lower, upper)
}

/// Distance from `value` to the region of `symbol` (zero inside).
#[inline]
pub fn region_gap(value: f64, symbol: u8, bits: u8) -> f64 {
    let (lower, upper) = region(symbol, bits);
    if value < lower {
        lower - value
    } else if value > upper {
        value - upper
    } else {
        0.0
    }
}
