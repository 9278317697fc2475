//! Parameter presets of the five published figures.

use qheine_core::geomtest::CurveMap;
use qheine_core::gfrac::{RatioForm, RatioVariant};
use qheine_core::ParamSet;

/// Default `c` of figure 5.
pub const FIGURE5_DEFAULT_C: f64 = 50.0;

#[derive(Debug, Clone, Copy)]
pub struct FigurePreset {
    pub number: u8,
    pub map: CurveMap,
    pub r: f64,
    pub title: &'static str,
}

fn params(a: f64, b: f64, c: f64, q: f64) -> ParamSet {
    ParamSet::new(a, b, c, q).expect("preset parameters are valid")
}

/// Preset for figure `n` (1..=5). `c` overrides figure 5's `c`.
pub fn preset(n: u8, c: Option<f64>) -> Option<FigurePreset> {
    let fig3 = params(0.99, 0.998, 0.98, 0.9);
    Some(match n {
        1 => FigurePreset {
            number: 1,
            map: CurveMap::GaussShift {
                a: 0.0,
                b: 0.0199,
                c: 0.1,
            },
            r: 0.999,
            title: "zF(a+1,b;c;z)/F(a,b;c;z), a=0, b=0.0199, c=0.1, r=0.999",
        },
        2 => FigurePreset {
            number: 2,
            map: CurveMap::Ratio {
                variant: RatioVariant::ShiftBc,
                form: RatioForm::Plain,
                params: params(0.9, 0.7, 0.6, 0.8),
            },
            r: 0.998,
            title: "zΦ[a,bq;cq;q,z]/Φ[a,b;c;q,z], a=0.9, b=0.7, c=0.6, q=0.8, r=0.998",
        },
        3 => FigurePreset {
            number: 3,
            map: CurveMap::Ratio {
                variant: RatioVariant::ShiftA,
                form: RatioForm::Moment,
                params: fig3,
            },
            r: 0.999,
            title: "zΦ[aq,b;c;q,z]/Φ[a,b;c;q,z], a=0.99, b=0.998, c=0.98, q=0.9, r=0.999",
        },
        4 => FigurePreset {
            number: 4,
            map: CurveMap::Ratio {
                variant: RatioVariant::ShiftAll,
                form: RatioForm::Moment,
                params: fig3,
            },
            r: 0.999,
            title: "zΦ[aq,bq;cq;q,z]/Φ[a,b;c;q,z], a=0.99, b=0.998, c=0.98, q=0.9, r=0.999",
        },
        5 => FigurePreset {
            number: 5,
            map: CurveMap::GaussShift {
                a: -1.0,
                b: 2.0,
                c: c.unwrap_or(FIGURE5_DEFAULT_C),
            },
            r: 0.999,
            title: "zF(0,2;c;z)/F(-1,2;c;z), r=0.999",
        },
        _ => return None,
    })
}
