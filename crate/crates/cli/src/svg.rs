//! Schematic card diagrams. Each panel shows the left composition as a
//! column of rounded tracks, the right composition as a second column, the
//! hand as a circle underneath, and one strand per moving group.

use std::fmt::Write;

use multiplex_juggling::cards::Card;

const PANEL_W: f64 = 180.0;
const ROW_H: f64 = 26.0;
const TRACK_W: f64 = 34.0;
const TRACK_H: f64 = 18.0;
const LEFT_X: f64 = 18.0;
const RIGHT_X: f64 = PANEL_W - 18.0 - TRACK_W;
const PER_LINE: usize = 6;

struct Layout {
    rows: usize,
    panel_h: f64,
}

impl Layout {
    fn new(cards: &[Card]) -> Self {
        let rows = cards
            .iter()
            .map(|c| c.left().len().max(c.right().len()))
            .max()
            .unwrap_or(0)
            .max(1);
        Layout {
            rows,
            panel_h: rows as f64 * ROW_H + 78.0,
        }
    }

    /// Vertical centre of track `row`, counted upward from the hand.
    fn track_y(&self, row: usize) -> f64 {
        20.0 + (self.rows - 1 - row) as f64 * ROW_H + TRACK_H / 2.0
    }

    fn hand_y(&self) -> f64 {
        self.track_y(0) + 34.0
    }
}

fn track(out: &mut String, x: f64, y: f64, label: usize) {
    let _ = write!(
        out,
        r##"<rect x="{x:.1}" y="{:.1}" width="{TRACK_W}" height="{TRACK_H}" rx="7" fill="#eef2f7" stroke="#445"/><text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{label}</text>"##,
        y - TRACK_H / 2.0,
        x + TRACK_W / 2.0,
        y + 4.0
    );
}

#[derive(Clone, Copy)]
enum Stroke {
    Carried,
    Thrown,
    Resting,
}

fn strand(out: &mut String, (x1, y1): (f64, f64), (x2, y2): (f64, f64), stroke: Stroke) {
    let (color, extra) = match stroke {
        Stroke::Carried => ("#225", ""),
        Stroke::Thrown => ("#a33", ""),
        Stroke::Resting => ("#225", r#" stroke-dasharray="4 3""#),
    };
    let _ = write!(
        out,
        r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="{color}" stroke-width="1.4"{extra}/>"#
    );
}

fn panel(out: &mut String, card: &Card, layout: &Layout) {
    let left = card.left().parts();
    let right = card.right().parts();
    for (row, &part) in left.iter().enumerate() {
        track(out, LEFT_X, layout.track_y(row), part);
    }
    for (row, &part) in right.iter().enumerate() {
        track(out, RIGHT_X, layout.track_y(row), part);
    }
    let hand = (PANEL_W / 2.0, layout.hand_y());
    let _ = write!(
        out,
        r##"<circle cx="{:.1}" cy="{:.1}" r="9" fill="none" stroke="#445"/>"##,
        hand.0, hand.1
    );
    let out_of = |row: usize| (LEFT_X + TRACK_W, layout.track_y(row));
    let into = |row: usize| (RIGHT_X, layout.track_y(row));
    match card.indices() {
        None => {
            for row in 0..left.len() {
                strand(out, out_of(row), into(row), Stroke::Resting);
            }
        }
        Some(indices) => {
            strand(out, out_of(0), (hand.0, hand.1 - 9.0), Stroke::Carried);
            for (t, &n) in card.placement().iter().enumerate() {
                if n > 0 {
                    strand(out, (hand.0, hand.1 - 9.0), into(t), Stroke::Thrown);
                }
            }
            for (j, &slot) in indices.iter().enumerate() {
                strand(out, out_of(j + 1), into(slot - 1), Stroke::Carried);
            }
        }
    }
    let _ = write!(
        out,
        r##"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{} → {}, {} crossing{}</text>"##,
        PANEL_W / 2.0,
        layout.panel_h - 8.0,
        card.left(),
        card.right(),
        card.crossings(),
        if card.crossings() == 1 { "" } else { "s" }
    );
}

/// All cards as a grid of panels.
pub fn render_cards(cards: &[Card]) -> String {
    let layout = Layout::new(cards);
    let cols = cards.len().clamp(1, PER_LINE);
    let lines = cards.len().div_ceil(PER_LINE).max(1);
    let width = cols as f64 * PANEL_W;
    let height = lines as f64 * layout.panel_h;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif">"##
    );
    for (i, card) in cards.iter().enumerate() {
        let x = (i % PER_LINE) as f64 * PANEL_W;
        let y = (i / PER_LINE) as f64 * layout.panel_h;
        let _ = write!(out, r##"<g transform="translate({x:.1},{y:.1})">"##);
        panel(&mut out, card, &layout);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
