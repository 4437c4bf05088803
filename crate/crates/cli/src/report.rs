use std::path::{Path, PathBuf};
use std::time::Instant;

use silverbig_core::designs::Design;

/// What a run printed on stdout. Every claim should point at a file under
/// `files` that `silverbig silver check` or `verify` can re-examine.
pub struct RunReport {
    start: Instant,
    design: Option<(usize, usize, usize, usize)>,
    alphas: Vec<(Option<usize>, Option<usize>, bool)>,
    verdicts: Vec<(Option<usize>, String)>,
    notes: Vec<String>,
    files: Vec<PathBuf>,
}

impl RunReport {
    pub fn new() -> Self {
        Self {
            start: Instant::now(),
            design: None,
            alphas: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            files: Vec::new(),
        }
    }

    pub fn design(&mut self, d: &Design) {
        self.design = Some((d.v(), d.k(), d.b(), d.r()));
    }

    /// `alpha = None` when the search gave up before finding anything usable.
    pub fn alpha(&mut self, i: Option<usize>, alpha: Option<usize>, exact: bool) {
        self.alphas.push((i, alpha, exact));
    }

    pub fn verdict(&mut self, i: Option<usize>, text: impl Into<String>) {
        self.verdicts.push((i, text.into()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn file(&mut self, path: &Path) {
        self.files.push(path.to_path_buf());
    }

    pub fn print(&self) {
        if let Some((v, k, b, r)) = self.design {
            println!("design: v={v} k={k} b={b} r={r}");
        }
        for (i, alpha, exact) in &self.alphas {
            let label = i.map_or("alpha".to_string(), |i| format!("alpha(i={i})"));
            match alpha {
                Some(a) if *exact => println!("{label} = {a} (exact)"),
                Some(a) => println!("{label} >= {a} (budget exhausted)"),
                None => println!("{label} unknown (budget exhausted)"),
            }
        }
        for (i, text) in &self.verdicts {
            match i {
                Some(i) => println!("verdict(i={i}): {text}"),
                None => println!("verdict: {text}"),
            }
        }
        for n in &self.notes {
            println!("{n}");
        }
        for f in &self.files {
            println!("file: {}", f.display());
        }
        println!("time: {:.3} s", self.start.elapsed().as_secs_f64());
    }
}
