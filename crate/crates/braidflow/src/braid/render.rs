//! SVG pictures: braid diagrams and strand trajectory plots.
//!
//! Diagrams read top to bottom, one crossing per row. A positive letter is
//! the counterclockwise exchange; with the disk viewed from `v = -infinity`,
//! the strand moving rightward is nearer the eye, so it is drawn on top.

use super::BraidWord;
use crate::geometry::LinkLayout;
use crate::rational::rat_to_f64;

const LANE: f64 = 48.0;
const STEP: f64 = 56.0;
const MARGIN: f64 = 32.0;

fn color(strand: usize, total: usize) -> String {
    let hue = 360.0 * strand as f64 / total.max(1) as f64;
    format!("hsl({hue:.0}, 65%, 42%)")
}

/// Braid diagram for a word; strands keep their color through crossings.
pub fn braid_svg(word: &BraidWord) -> String {
    let k = word.strands;
    let rows = word.letters.len().max(1);
    let width = 2.0 * MARGIN + (k.saturating_sub(1)) as f64 * LANE;
    let height = 2.0 * MARGIN + rows as f64 * STEP;
    let lane_x = |lane: usize| MARGIN + lane as f64 * LANE;

    let mut body = String::new();
    let mut lane_strand: Vec<usize> = (0..k).collect();

    for (row, &letter) in word.letters.iter().enumerate() {
        let y0 = MARGIN + row as f64 * STEP;
        let y1 = y0 + STEP;
        let r = letter.unsigned_abs() as usize - 1;
        for lane in 0..k {
            if lane != r && lane != r + 1 {
                let x = lane_x(lane);
                body.push_str(&format!(
                    "<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{y1}\" stroke=\"{}\" stroke-width=\"3\"/>\n",
                    color(lane_strand[lane], k)
                ));
            }
        }
        let (xa, xb) = (lane_x(r), lane_x(r + 1));
        let ym = (y0 + y1) / 2.0;
        let curve =
            |from: f64, to: f64| format!("M {from} {y0} C {from} {ym}, {to} {ym}, {to} {y1}");
        let a = lane_strand[r]; // moves right
        let b = lane_strand[r + 1]; // moves left
        let (over_path, over_color, under_path, under_color) = if letter > 0 {
            (curve(xa, xb), color(a, k), curve(xb, xa), color(b, k))
        } else {
            (curve(xb, xa), color(b, k), curve(xa, xb), color(a, k))
        };
        body.push_str(&format!(
            "<path d=\"{under_path}\" fill=\"none\" stroke=\"{under_color}\" stroke-width=\"3\"/>\n"
        ));
        body.push_str(&format!(
            "<path d=\"{over_path}\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"9\"/>\n"
        ));
        body.push_str(&format!(
            "<path d=\"{over_path}\" fill=\"none\" stroke=\"{over_color}\" stroke-width=\"3\"/>\n"
        ));
        lane_strand.swap(r, r + 1);
    }
    if word.letters.is_empty() {
        for lane in 0..k {
            let x = lane_x(lane);
            body.push_str(&format!(
                "<line x1=\"{x}\" y1=\"{MARGIN}\" x2=\"{x}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"3\"/>\n",
                height - MARGIN,
                color(lane, k)
            ));
        }
    }

    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n{body}</svg>\n"
    )
}

/// Disk, link circles, and strand paths sampled from closures over `[0, 1]`.
pub fn trajectories_svg<S>(layout: &LinkLayout, paths: &[S], samples: usize) -> String
where
    S: Fn(f64) -> (f64, f64),
{
    let size = 560.0;
    let scale = size / 2.0 * 0.92;
    let px = |x: f64| size / 2.0 + scale * x;
    let py = |y: f64| size / 2.0 - scale * y;

    let mut body = format!(
        "<circle cx=\"{c}\" cy=\"{c}\" r=\"{scale}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\"/>\n",
        c = size / 2.0
    );
    for circle in &layout.circles {
        let cx = px(rat_to_f64(&circle.center.0));
        let cy = py(rat_to_f64(&circle.center.1));
        let r = scale * rat_to_f64(&circle.radius);
        body.push_str(&format!(
            "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1.5\" stroke-dasharray=\"5 4\"/>\n"
        ));
    }
    let n = samples.max(2);
    for (s, path) in paths.iter().enumerate() {
        let pts: Vec<String> = (0..=n)
            .map(|i| {
                let (x, y) = path(i as f64 / n as f64);
                format!("{:.2},{:.2}", px(x), py(y))
            })
            .collect();
        body.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2.5\"/>\n",
            pts.join(" "),
            color(s, paths.len())
        ));
        let (x0, y0) = path(0.0);
        body.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"{}\"/>\n",
            px(x0),
            py(y0),
            color(s, paths.len())
        ));
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n{body}</svg>\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_diagram_structure() {
        let w = BraidWord::from_letters(3, vec![1, -2]).unwrap();
        let svg = braid_svg(&w);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        // Two crossings, three paths each (under, casing, over).
        assert_eq!(svg.matches("<path").count(), 6);
        // One uninvolved lane per row.
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("stroke=\"#ffffff\"").count(), 2);

        let empty = braid_svg(&BraidWord::identity(4));
        assert_eq!(empty.matches("<line").count(), 4);
        assert_eq!(empty.matches("<path").count(), 0);
    }

    #[test]
    fn trajectory_plot_structure() {
        let layout = crate::geometry::standard_layout(2, &crate::rational::rat(0, 1)).unwrap();
        let paths: Vec<Box<dyn Fn(f64) -> (f64, f64)>> =
            vec![Box::new(|t| (0.3 * t, 0.0)), Box::new(|t| (0.0, 0.3 * t))];
        let svg = trajectories_svg(&layout, &paths, 16);
        // Disk outline + 2 link circles + 2 start markers.
        assert_eq!(svg.matches("<circle").count(), 5);
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
