//! Line-oriented read-eval-print loop.

use std::io::{self, BufRead, Write};

use crate::eval::Session;

/// Reads statements from `input` until end of file. Each result prints as
/// `name = value`; errors print to `err` and the loop continues.
pub fn run<R: BufRead, W: Write, E: Write>(session: &mut Session, input: R, out: &mut W, err: &mut E, prompt: bool) -> io::Result<()> {
    if prompt {
        write!(out, ">> ")?;
        out.flush()?;
    }
    for line in input.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed == "exit" || trimmed == "quit" {
            break;
        }
        if !trimmed.is_empty() {
            match session.run_line(trimmed) {
                Ok(lines) => {
                    for l in lines {
                        writeln!(out, "{l}")?;
                    }
                }
                Err(e) => writeln!(err, "error: {e}")?,
            }
        }
        if prompt {
            write!(out, ">> ")?;
            out.flush()?;
        }
    }
    if prompt {
        writeln!(out)?;
    }
    Ok(())
}
