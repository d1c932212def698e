from binring.cli import main

main()
