use std::fmt::Display;
use std::path::PathBuf;

/// A command failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// A check did not hold (exit 1).
    Check(String),
    /// Unreadable or invalid input (exit 2).
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Input(m) => m,
        }
    }

    pub fn input(e: impl Display) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// Collects the primary output and writes it to `--out` or stdout.
///
/// A failing check still emits its report before the error.
pub struct Output {
    path: Option<PathBuf>,
    quiet: bool,
    buffer: String,
}

impl Output {
    pub fn new(path: Option<PathBuf>, quiet: bool) -> Self {
        Output {
            path,
            quiet,
            buffer: String::new(),
        }
    }

    pub fn line(&mut self, text: impl Display) {
        self.buffer.push_str(&text.to_string());
        self.buffer.push('\n');
    }

    pub fn raw(&mut self, text: &str) {
        self.buffer.push_str(text);
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.line(format!("{key}: {value}"));
    }

    /// Prints directly to stdout regardless of `--out`.
    pub fn status(&self, text: impl Display) {
        if !self.quiet {
            println!("{text}");
        }
    }

    pub fn has_path(&self) -> bool {
        self.path.is_some()
    }

    pub fn finish(&mut self) -> Result<(), Failure> {
        let text = std::mem::take(&mut self.buffer);
        match &self.path {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
            None => {
                if !self.quiet {
                    print!("{text}");
                }
                Ok(())
            }
        }
    }

    /// Emits what was collected, then fails.
    pub fn fail(&mut self, f: Failure) -> Result<(), Failure> {
        self.finish()?;
        Err(f)
    }
}
