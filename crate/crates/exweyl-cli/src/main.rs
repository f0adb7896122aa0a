fn main() {
    // subcommands land here once the core modules are in place
}
