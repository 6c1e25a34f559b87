use motivic_cli::output::Format;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let format = motivic_cli::format_of(&args);
    let result = motivic_cli::run(&args);
    match format {
        Format::Json => println!("{}", result.to_json()),
        Format::Text => println!("{}", result.to_text()),
    }
    std::process::exit(result.exit_code());
}
